"""Hand-crafted image quality features and popularity prediction for listings."""

from .assembly import (
    QUALITY_DIM,
    SCHEMA_VERSION,
    ExtractorConfig,
    QualityFeatureExtractor,
    SchemaEntry,
    extract_quality,
    feature_slice,
    read_vectors,
    schema,
    write_vectors,
    write_vectors_csv,
)
from .blur import blur_edge_structure, blur_frequency, edge_structure_counts
from .composition import mser_count, spectral_residual_saliency, thirds_map
from .dataset import (
    LabeledExample,
    ListingRecord,
    SynthResult,
    binarize,
    generate_synthetic,
    popularity_score,
    read_manifest,
    resolve_image_path,
    split,
    split_indices,
    write_manifest,
)
from .errors import (
    DecodeError,
    DegenerateImage,
    DegenerateLabels,
    DimensionMismatch,
    EmptyInput,
    ImageTooSmall,
    ImgqError,
    InsufficientClassMembers,
    InvalidSigma,
    SchemaMismatch,
    TooSmall,
    UnsupportedConversion,
)
from .model import (
    EvalReport,
    ExperimentConfig,
    ExperimentResult,
    PopularityLogisticRegression,
    auc,
    load_model,
    logloss_value_and_grad,
    run_experiment,
    save_model,
    train,
)
from .raster import (
    Histogram,
    Pyramid,
    RasterImage,
    WaveletLevel,
    build_laplacian_pyramid,
    build_wavelet_pyramid,
    collapse_laplacian_pyramid,
    convert_colorspace,
    decode_image,
    encode_png,
    fft2_magnitude,
    gaussian_blur,
    gaussian_kernel_1d,
    gray_plane,
    haar_dwt2,
    haar_idwt2,
    histogram256,
    laplacian_3x3,
    load_image,
    resize,
    save_png,
)
from .simplicity import brightness, contrast, hue_count, spatial_edge_distribution
from .textfeat import (
    MM_DIM,
    TEXT_DIM,
    SparseVector,
    TextFeatureHasher,
    concat_mm,
    hash_index,
    stable_token_hash,
    text_features,
    text_vector,
    tokenize,
)
from .texture import (
    dof_laplacian,
    dof_spatial_spread,
    dof_wavelet,
    lbp_codes,
    lbp_pyramid,
    laplacian_smoothness,
    wavelet_smoothness,
)

__version__ = "0.1.0"

__all__ = [
    "QUALITY_DIM",
    "SCHEMA_VERSION",
    "TEXT_DIM",
    "MM_DIM",
    "ImgqError",
    "DecodeError",
    "UnsupportedConversion",
    "InvalidSigma",
    "TooSmall",
    "ImageTooSmall",
    "DegenerateImage",
    "SchemaMismatch",
    "DimensionMismatch",
    "DegenerateLabels",
    "InsufficientClassMembers",
    "EmptyInput",
    "RasterImage",
    "Histogram",
    "WaveletLevel",
    "Pyramid",
    "decode_image",
    "load_image",
    "encode_png",
    "save_png",
    "convert_colorspace",
    "gray_plane",
    "laplacian_3x3",
    "gaussian_kernel_1d",
    "gaussian_blur",
    "fft2_magnitude",
    "resize",
    "build_laplacian_pyramid",
    "collapse_laplacian_pyramid",
    "haar_dwt2",
    "haar_idwt2",
    "build_wavelet_pyramid",
    "histogram256",
    "spatial_edge_distribution",
    "hue_count",
    "contrast",
    "brightness",
    "blur_frequency",
    "edge_structure_counts",
    "blur_edge_structure",
    "spectral_residual_saliency",
    "thirds_map",
    "mser_count",
    "wavelet_smoothness",
    "laplacian_smoothness",
    "lbp_codes",
    "lbp_pyramid",
    "dof_wavelet",
    "dof_laplacian",
    "dof_spatial_spread",
    "SchemaEntry",
    "schema",
    "feature_slice",
    "ExtractorConfig",
    "extract_quality",
    "QualityFeatureExtractor",
    "write_vectors",
    "read_vectors",
    "write_vectors_csv",
    "tokenize",
    "stable_token_hash",
    "hash_index",
    "SparseVector",
    "text_features",
    "text_vector",
    "concat_mm",
    "TextFeatureHasher",
    "ListingRecord",
    "LabeledExample",
    "SynthResult",
    "popularity_score",
    "write_manifest",
    "read_manifest",
    "resolve_image_path",
    "binarize",
    "split_indices",
    "split",
    "generate_synthetic",
    "logloss_value_and_grad",
    "auc",
    "PopularityLogisticRegression",
    "train",
    "EvalReport",
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "save_model",
    "load_model",
]
