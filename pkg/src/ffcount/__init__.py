"""Point counting and zeta functions of elliptic curves over finite fields."""

from .counting import (CountError, CountResult, cornacchia, count_bsgs, count_cm, count_naive,
                       hasse_window)
from .ecurve import (Curve, Point, curve_make, parse_curve, point_add, quadratic_twist,
                     random_point, scalar_mul)
from .ffield import FieldCtx, FieldElement, field_make, legendre_chi, sqrt_mod
from .padic import agm_count, padic_ctx, sqrt_1mod8
from .polyring import Poly, QuotientRing, crt_combine, qr_inv, qr_pow
from .schoof import make_prime_plan, schoof_count, trace_mod_ell
from .zetalab import (ZetaFn, brute_force_variety_count, counts_to_zeta, parse_variety,
                      zeta_elliptic, zeta_to_counts)

__version__ = "0.1.0"
