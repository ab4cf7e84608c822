"""cstlab: desk-scale equidistribution experiments for the hybrid
Chebotarev/Sato-Tate statistics of abelian surfaces that are potentially
of GL(2)-type.

Submodules: `groups` (the thirteen Sato-Tate groups and Haar measure),
`reps` (their irreducible representations), `counting` (Frobenius data
from curves over Q), `galois` (abelian extensions and Artin symbols),
`equidist` (character sums, moments, chi-square fits), `lfun` (truncated
Euler products), `cli` (the `cstlab` command).
"""

from .counting import (EllipticCurve, FrobeniusDatum, LFieldSpec, SurfaceSpec,
                       build_dataset, count_elliptic, count_genus2,
                       frobenius_of_surface, kronecker_symbol, sieve_primes)
from .equidist import (CstSetup, EquidistReport, analyze, character_sum,
                       chi_square_fit, histogram2d, make_synthetic_setup,
                       moment_table, self_test)
from .galois import (CharacterSpec, CustomExtension, GaloisExtSpec,
                     char_eval, check_disjoint, cyclotomic_extension,
                     make_extension, product_extension, quadratic_extension)
from .groups import (GROUP_TAGS, ClassPoint, GroupElement, SatoTateGroupSpec,
                     class_point_of, haar_moment, make_group, realize_matrix,
                     sample_haar, sample_haar_arrays, weyl_density)
from .lfun import LScanReport, invertibility_scan, log_L_truncated
from .reps import (IrrepSpec, char_value, euler_angles, list_irreps,
                   rep_matrix)

__version__ = "0.1.0"
