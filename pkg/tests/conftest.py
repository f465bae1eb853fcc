"""Shared strategies: random density matrices kept well away from rank loss.

Eigenvalues are drawn in [0.05, 1] before normalization, so the smallest one
stays orders of magnitude above the PSD tolerance and the sub-tolerance
zeroing inside psd_sqrt never triggers on property-test inputs.
"""

import numpy as np
from hypothesis import strategies as st

from pbtbounds.linalg import DensityMatrix

_unit = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
_weight = st.floats(0.05, 1.0, allow_nan=False, allow_infinity=False)


@st.composite
def density_matrices(draw, dims=(2, 2)):
    dims = tuple(dims)
    dim = int(np.prod(dims))
    re = draw(st.lists(_unit, min_size=dim * dim, max_size=dim * dim))
    im = draw(st.lists(_unit, min_size=dim * dim, max_size=dim * dim))
    g = np.array(re).reshape(dim, dim) + 1j * np.array(im).reshape(dim, dim)
    # QR of any square matrix yields a unitary Q, rank-deficient draws included
    q, _ = np.linalg.qr(g + np.eye(dim))
    w = np.array(draw(st.lists(_weight, min_size=dim, max_size=dim)))
    w = w / w.sum()
    return DensityMatrix((q * w) @ q.conj().T, dims)


@st.composite
def probabilities(draw, lo=0.0, hi=1.0):
    return draw(st.floats(lo, hi, allow_nan=False, allow_infinity=False))
