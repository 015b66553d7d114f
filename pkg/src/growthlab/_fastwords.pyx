# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for reduced free-group words.

Same contracts as growthlab._purewords.  Letters and exponents stay
ordinary Python ints, so arbitrary precision flows through unchanged;
the win over the pure kernel is that result tuples are assembled in a
single C pass instead of list round trips.  word_length alone keeps a
C accumulator with a pure fallback for oversized exponents.
"""

from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_GET_ITEM, PyTuple_New, PyTuple_SET_ITEM

from growthlab import _purewords as _pure

normalize_pairs = _pure.normalize_pairs


cdef inline tuple _copy_join(tuple a, Py_ssize_t i, object merged,
                             tuple b, Py_ssize_t j):
    # a[:i] with slot i-1 optionally replaced by merged, then b[j:]
    cdef Py_ssize_t nb = len(b)
    cdef tuple out = PyTuple_New(i + (nb - j))
    cdef Py_ssize_t k, stop = i
    cdef object item
    if merged is not None:
        stop = i - 1
    for k in range(stop):
        item = <object> PyTuple_GET_ITEM(a, k)
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, k, item)
    if merged is not None:
        Py_INCREF(merged)
        PyTuple_SET_ITEM(out, i - 1, merged)
    for k in range(j, nb):
        item = <object> PyTuple_GET_ITEM(b, k)
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i + k - j, item)
    return out


cdef tuple _concat(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t i, j
    cdef object s, merged
    if na == 0:
        return b
    if nb == 0:
        return a
    i = na
    j = 0
    merged = None
    while j < nb and i > 0:
        if a[i - 2] != b[j]:
            break
        s = a[i - 1] + b[j + 1]
        j += 2
        if s == 0:
            i -= 2
        else:
            merged = s
            break
    return _copy_join(a, i, merged, b, j)


cdef tuple _invert(tuple a):
    cdef Py_ssize_t n = len(a)
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i, pos = 0
    cdef object g, e
    for i in range(n - 2, -1, -2):
        g = a[i]
        Py_INCREF(g)
        PyTuple_SET_ITEM(out, pos, g)
        e = -a[i + 1]
        Py_INCREF(e)
        PyTuple_SET_ITEM(out, pos + 1, e)
        pos += 2
    return out


cdef tuple _pow(tuple a, e):
    if e == 0 or len(a) == 0:
        return ()
    if e < 0:
        a = _invert(a)
        e = -e
    if e == 1:
        return a
    cdef tuple result = ()
    cdef tuple base = a
    while True:
        if e & 1:
            result = _concat(result, base)
        e >>= 1
        if not e:
            return result
        base = _concat(base, base)


def concat_reduce(tuple a, tuple b):
    """Product of two reduced words, reduced."""
    return _concat(a, b)


def invert_word(tuple a):
    return _invert(a)


def pow_word(tuple a, e):
    """a**e by square-and-multiply; powers of one word commute."""
    return _pow(a, e)


def substitute(tuple a, images):
    """Apply a generator-indexed substitution to a word.

    Accumulates into one list so the cost is linear in the output
    length, not quadratic.
    """
    cdef Py_ssize_t n = len(a), i, j, nb, m
    cdef list out = []
    cdef tuple seq
    cdef object e, img, s
    m = 0
    for i in range(0, n, 2):
        e = a[i + 1]
        img = images[a[i]]
        if e == 1:
            seq = <tuple> img
        elif e == -1:
            seq = _invert(<tuple> img)
        else:
            seq = _pow(<tuple> img, e)
        j = 0
        nb = len(seq)
        while j < nb and m > 0:
            if out[m - 2] == seq[j]:
                s = out[m - 1] + seq[j + 1]
                j += 2
                if s == 0:
                    del out[m - 2:]
                    m -= 2
                else:
                    out[m - 1] = s
                    break
            else:
                break
        out.extend(seq[j:])
        m = len(out)
    return tuple(out)


def word_length(tuple a):
    """Letter count: the sum of |exponent| over the word."""
    cdef Py_ssize_t n = len(a), i
    cdef long long total = 0
    cdef long long e
    try:
        for i in range(1, n, 2):
            e = a[i]
            total += e if e > 0 else -e
        return total
    except OverflowError:
        return _pure.word_length(a)


def free_key_payload(tuple a):
    """Run-length key payload: comma-separated 1-based index:exponent."""
    cdef Py_ssize_t n = len(a), i
    cdef list parts = []
    for i in range(0, n, 2):
        parts.append(b"%d:%d" % (a[i] + 1, a[i + 1]))
    return b",".join(parts)
