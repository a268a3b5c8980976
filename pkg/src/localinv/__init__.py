"""Local inversion of maps over finite fields through the linear complexity of their iterates."""

from .embed import invert_embedding
from .errors import *  # noqa: F401,F403
from .field import GF2, GF2w, GFp, FieldElem, StateVec, fe_arith, vec_codec
from .linalg import Mat, mat_rank, mat_solve
from .lrs import (BlackBoxMap, EarlyPeriod, IterSeq, MinPoly, NoConclusion, Solved, hankel_build,
                  invert_local, minpoly_bm_lcm, minpoly_hankel, poly_order, seq_generate)

__version__ = "0.1.0"
