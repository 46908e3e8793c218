"""Command-line front end: synth, extract, visualize, train-eval."""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click
import numpy as np

from . import assembly, composition, dataset, model, raster, texture, textfeat
from .errors import ImgqError

_WORKER_CONFIG = None


def _pool_init(config):
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _extract_task(args):
    index, listing_id, path = args
    try:
        vec = assembly.extract_quality(raster.load_image(path), _WORKER_CONFIG)
        return index, listing_id, vec, None
    except (ImgqError, OSError, ValueError) as exc:
        return index, listing_id, None, f"{type(exc).__name__}: {exc}"


def extract_manifest(records, manifest_path, config, threads: int = 1):
    """Extract quality vectors for every record, in manifest order.

    Failed images are skipped; returns (kept_records, ids, matrix, failures)
    where failures is a list of (listing_id, message). Work is farmed out to
    a process pool when threads > 1, but output order never depends on it.
    """
    tasks = [
        (i, rec.listing_id, dataset.resolve_image_path(manifest_path, rec))
        for i, rec in enumerate(records)
    ]
    if threads > 1:
        with ProcessPoolExecutor(
            max_workers=threads, initializer=_pool_init, initargs=(config,)
        ) as pool:
            results = list(pool.map(_extract_task, tasks, chunksize=4))
    else:
        _pool_init(config)
        results = [_extract_task(t) for t in tasks]

    kept, ids, rows, failures = [], [], [], []
    for (index, listing_id, vec, err) in sorted(results, key=lambda r: r[0]):
        if err is not None:
            failures.append((listing_id, err))
            continue
        kept.append(records[index])
        ids.append(listing_id)
        rows.append(vec)
    matrix = (
        np.vstack(rows) if rows else np.empty((0, assembly.QUALITY_DIM))
    )
    return kept, np.array(ids, dtype=np.uint64), matrix, failures


def _load_manifest_or_fail(manifest_path):
    try:
        return dataset.read_manifest(manifest_path)
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc))


@click.group()
def main():
    """Image quality features and popularity models for product listings."""


@main.command()
@click.option("--manifest", required=True, type=click.Path(), help="JSONL manifest.")
@click.option("--out", required=True, type=click.Path(), help="Output feature file.")
@click.option("--threads", default=1, show_default=True, envvar="IMGQ_THREADS",
              type=click.IntRange(min=1), help="Worker processes.")
@click.option("--theta", default=None, type=float,
              help="Fixed FFT magnitude threshold (default: 5x mean non-DC).")
def extract(manifest, out, threads, theta):
    """Extract quality feature vectors for every image in a manifest."""
    records = _load_manifest_or_fail(manifest)
    config = assembly.ExtractorConfig(blur_theta=theta)
    kept, ids, matrix, failures = extract_manifest(records, manifest, config, threads)
    for listing_id, message in failures:
        click.echo(f"warning: skipped listing {listing_id}: {message}", err=True)
    try:
        assembly.write_vectors(zip(ids, matrix), out)
    except OSError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {len(kept)} vectors to {out}")
    if records and len(failures) > 0.10 * len(records):
        sys.exit(1)


@main.command()
@click.argument("image", type=click.Path())
@click.option("--out", required=True, type=click.Path(), help="Output directory.")
@click.option("--theta", default=None, type=float,
              help="Fixed FFT magnitude threshold (default: 5x mean non-DC).")
def visualize(image, out, theta):
    """Render intermediate feature maps and scalar features for one image."""
    out_dir = Path(out)
    try:
        img = raster.load_image(image)
        out_dir.mkdir(parents=True, exist_ok=True)
    except (ImgqError, OSError) as exc:
        raise click.ClickException(str(exc))

    def normalized(plane):
        peak = plane.max()
        return plane / peak if peak > 0 else np.zeros_like(plane)

    gray = raster.gray_plane(img)
    raster.save_png(normalized(raster.laplacian_3x3(img)), out_dir / "laplacian.png")
    saliency = composition.spectral_residual_saliency(img)
    raster.save_png(saliency, out_dir / "saliency.png")
    cells = composition.thirds_map(saliency).reshape(5, 5)
    raster.save_png(np.kron(normalized(cells), np.ones((50, 50))),
                    out_dir / "thirds_map.png")
    raster.save_png(texture.lbp_codes(gray) / 255.0, out_dir / "lbp.png")
    _, hl, lh, hh = raster.haar_dwt2(raster._pad_even(gray))
    for name, band in (("hl", hl), ("lh", lh), ("hh", hh)):
        raster.save_png(normalized(np.abs(band)), out_dir / f"wavelet_{name}.png")

    config = assembly.ExtractorConfig(blur_theta=theta)
    vec = assembly.extract_quality(img, config)
    scalars = {
        entry.name: vec[entry.offset]
        for entry in assembly.schema()
        if entry.length == 1
    }
    (out_dir / "features.json").write_text(json.dumps(scalars, indent=2) + "\n")
    click.echo(f"wrote 7 maps and features.json to {out_dir}")


@main.command("train-eval")
@click.option("--manifest", required=True, type=click.Path(), help="JSONL manifest.")
@click.option("--out", required=True, type=click.Path(), help="Model/report directory.")
@click.option("--seed", default=0, show_default=True, envvar="IMGQ_SEED", type=int)
@click.option("--binarize", "binarize_policy", default="median", show_default=True,
              type=click.Choice(["median", "positive"]), help="Label policy.")
@click.option("--test-fraction", default=0.25, show_default=True, type=float)
@click.option("--l2", default=1e-4, show_default=True, type=float)
@click.option("--lr", default=0.1, show_default=True, type=float)
@click.option("--epochs", default=50, show_default=True, type=click.IntRange(min=1))
@click.option("--threads", default=1, show_default=True, envvar="IMGQ_THREADS",
              type=click.IntRange(min=1), help="Extraction worker processes.")
@click.option("--theta", default=None, type=float,
              help="Fixed FFT magnitude threshold (default: 5x mean non-DC).")
def train_eval(manifest, out, seed, binarize_policy, test_fraction, l2, lr,
               epochs, threads, theta):
    """Train text, image and multimodal classifiers; print the eval report."""
    records = _load_manifest_or_fail(manifest)
    config = assembly.ExtractorConfig(blur_theta=theta)
    kept, _, quality, failures = extract_manifest(records, manifest, config, threads)
    for listing_id, message in failures:
        click.echo(f"warning: skipped listing {listing_id}: {message}", err=True)

    text_matrix = textfeat.TextFeatureHasher().fit_transform(kept)
    cfg = model.ExperimentConfig(
        seed=seed, test_fraction=test_fraction, binarize_policy=binarize_policy,
        l2=l2, lr=lr, epochs=epochs,
    )
    try:
        result = model.run_experiment(kept, quality, text_matrix, cfg)
    except (ImgqError, ValueError) as exc:
        raise click.ClickException(str(exc))

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, clf in result.models.items():
        model.save_model(clf, out_dir / f"{name}_model.npz")
    report_json = result.report.to_json()
    (out_dir / "report.json").write_text(report_json + "\n")
    click.echo(report_json)


@main.command()
@click.option("--n", default=200, show_default=True, type=int, help="Listing count.")
@click.option("--seed", default=0, show_default=True, envvar="IMGQ_SEED", type=int)
@click.option("--out", required=True, type=click.Path(), help="Output directory.")
def synth(n, seed, out):
    """Generate a synthetic listing corpus (images + manifest.jsonl)."""
    if n < 20:
        raise click.UsageError("--n must be at least 20")
    try:
        result = dataset.generate_synthetic(n, seed, out)
    except OSError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {len(result.records)} listings to {result.manifest_path}")


if __name__ == "__main__":
    main()
