"""Prosodic segmentation evaluation toolkit.

Thin Python layer over the C++ core: text normalization, token-stream
alignment and boundary scoring, WER/CER, F0 contour analysis, and the
statistical tests used to compare segmentation conditions.
"""

from ._prosokit import (  # noqa: F401
    AudioBuffer,
    BoundaryConfusion,
    ErrorRates,
    F0Track,
    PrfMetrics,
    ProsokitError,
    Segment,
    TestResult,
    __version__,
    align_token_streams,
    boundary_confusion,
    cohens_kappa,
    contour_rmse,
    descriptive,
    edit_distance,
    error_rates,
    extract_f0,
    interleave_boundaries,
    load_manifest,
    normalize_text,
    number_to_words_pt,
    one_way_anova,
    parse_textgrid,
    precision_recall_f1,
    read_wav,
    regularized_incomplete_beta,
    semitones_re_100,
    student_t_cdf,
    studentized_range_p,
    t_test,
    tukey_hsd,
    write_wav,
)
