"""Pure numpy versions of the kernels in ``_kernels.pyx``.

Same signatures, same operation order, so results are bitwise identical to
the compiled path; used when the extension is not built.
"""

import numpy as np

# cells per vectorized chunk; bounds temporary memory at a few tens of MB
_CHUNK = 1 << 18


def _acc(x, s, c):
    t = s + x
    c += np.where(np.abs(s) >= np.abs(x), (s - t) + x, (x - t) + s)
    return t


def _sum_terms(tre, tim, a_terms, b_terms, m, shape):
    """Compensated sums; a_terms[k] + b_terms[k] broadcasts to the index array of term k."""
    sr = np.zeros(shape)
    cr = np.zeros(shape)
    si = np.zeros(shape)
    ci = np.zeros(shape)
    for k in range(len(a_terms)):
        idx = a_terms[k] + b_terms[k]
        idx -= m * (idx >= m)
        sr = _acc(tre[idx], sr, cr)
        si = _acc(tim[idx], si, ci)
    return sr + cr, si + ci


def grid_block(tre, tim, elems, invs, m, a_start, b_start, out_re, out_im):
    na, nb = out_re.shape
    if len(elems) == 0 or na == 0 or nb == 0:
        return
    elems = np.asarray(elems, dtype=np.int64)
    invs = np.asarray(invs, dtype=np.int64)
    b = np.arange(b_start, b_start + nb, dtype=np.int64) % m
    bpart = invs[:, None] * b[None, :] % m
    rows = max(1, _CHUNK // nb)
    for i0 in range(0, na, rows):
        i1 = min(na, i0 + rows)
        a = np.arange(a_start + i0, a_start + i1, dtype=np.int64) % m
        apart = elems[:, None] * a[None, :] % m
        re, im = _sum_terms(tre, tim, apart[:, :, None], bpart[:, None, :], m, (i1 - i0, nb))
        out_re[i0:i1] = re
        out_im[i0:i1] = im


def pair_sums(tre, tim, elems, invs, m, a, b, out_re, out_im):
    elems = np.asarray(elems, dtype=np.int64)
    invs = np.asarray(invs, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(elems)))
    for i0 in range(0, len(a), step):
        i1 = min(len(a), i0 + step)
        apart = elems[:, None] * a[None, i0:i1] % m
        bpart = invs[:, None] * b[None, i0:i1] % m
        re, im = _sum_terms(tre, tim, apart, bpart, m, (i1 - i0,))
        out_re[i0:i1] = re
        out_im[i0:i1] = im
