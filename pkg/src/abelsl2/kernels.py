"""Backend selection for the monomial kernels.

The compiled extension is used when it was built; set ``ABELSL2_PURE=1`` to
force the pure-Python fallback.
"""

import os

if os.environ.get("ABELSL2_PURE"):
    from abelsl2 import _pykernels as _impl
else:
    try:
        from abelsl2 import _ckernels as _impl
    except ImportError:
        from abelsl2 import _pykernels as _impl

BACKEND = _impl.BACKEND
merge_sign = _impl.merge_sign
wedge_terms = _impl.wedge_terms
map_terms = _impl.map_terms
star_terms = _impl.star_terms
