"""Concrete maps whose local inverses answer cryptanalytic questions."""

from .dlp import dlp_f2w_map, dlp_fp_map, is_primitive
from .ec import INF, Curve, CurveInstance, ec_scalar_mul, ecdlp_map, point_order
from .registry import BUILDERS, SAMPLEABLE, Problem, load_problem, sample_problem
from .rsa import RsaInstance, multiplicative_order, rsa_fc_map, rsa_fe_map
from .spn import SpnInstance, spn_map
from .stream import StreamInstance, stream_map

__all__ = [
    "BUILDERS", "Curve", "CurveInstance", "INF", "Problem", "RsaInstance", "SAMPLEABLE",
    "SpnInstance", "StreamInstance", "dlp_f2w_map", "dlp_fp_map", "ec_scalar_mul",
    "ecdlp_map", "is_primitive", "load_problem", "multiplicative_order", "point_order",
    "rsa_fc_map", "rsa_fe_map", "sample_problem", "spn_map", "stream_map",
]
