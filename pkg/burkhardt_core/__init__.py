# burkhardt_core/__init__.py

from .brauer import (
    QuaternionSymbolQ,
    RstClass,
    albert_form,
    hilbert_symbol,
    power_series_anisotropy,
    quaternion_index_q,
    rst_index_classify,
    rst_symbol_to_class,
)
from .certificates import CERTIFICATES, run_certificates
from .exactnum import Cyclo3, KummerCoeff, cyclo_mul, kummer_mul
from .fibration import (
    cubic_family,
    cubic_group_law,
    flex_verify,
    generate_points,
    torsion_test,
)
from .multipoly import (
    Polynomial,
    partial_derivative,
    poly_arith,
    reduce_by_relation,
    substitute_linear,
    symmetric_reduce,
)
from .obstruction import conic_to_symbol, enveloping_cone, marked_sextic, obstruction_conic, polar
from .standard_model import (
    ProjectivePoint,
    QuarticModel,
    hessian_membership,
    maschke_map,
    singularity_test,
    standard_model,
)
from .textio import io_roundtrip
from .twist_factory import (
    bdoubleprime_model,
    bprime_model,
    elliptic_kummer_check,
    tangent_cone_quadric,
    twist_from_sextic,
)

__all__ = [
    "Cyclo3",
    "KummerCoeff",
    "cyclo_mul",
    "kummer_mul",
    "Polynomial",
    "poly_arith",
    "substitute_linear",
    "partial_derivative",
    "reduce_by_relation",
    "symmetric_reduce",
    "ProjectivePoint",
    "QuarticModel",
    "standard_model",
    "maschke_map",
    "hessian_membership",
    "singularity_test",
    "bprime_model",
    "bdoubleprime_model",
    "twist_from_sextic",
    "tangent_cone_quadric",
    "elliptic_kummer_check",
    "polar",
    "obstruction_conic",
    "conic_to_symbol",
    "marked_sextic",
    "enveloping_cone",
    "QuaternionSymbolQ",
    "RstClass",
    "hilbert_symbol",
    "quaternion_index_q",
    "rst_symbol_to_class",
    "rst_index_classify",
    "albert_form",
    "power_series_anisotropy",
    "cubic_family",
    "flex_verify",
    "cubic_group_law",
    "torsion_test",
    "generate_points",
    "CERTIFICATES",
    "run_certificates",
    "io_roundtrip",
]
