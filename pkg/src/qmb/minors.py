"""Quantum minors and q-commutation probing.

A quantum minor is the q-determinant of a square submatrix: the signed
permutation sum with weights ``(-q)^inv(sigma)`` where ``inv`` counts
inversions.  Minors are built directly from that sum (submatrix sizes at desk
scale make the m! enumeration trivial) and stored in normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Optional, Sequence

from .algebra import Element, normal_form
from .scalars import LaurentQ

IndexSet = tuple[int, ...]


def index_set(labels: Iterable[int]) -> IndexSet:
    """Validate and return a strictly increasing, nonempty label tuple."""
    t = tuple(labels)
    if not t:
        raise ValueError("index set must be nonempty")
    if any(not isinstance(v, int) for v in t):
        raise ValueError(f"labels must be integers, got {t!r}")
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"labels must be strictly increasing, got {t!r}")
    return t


@dataclass(frozen=True)
class MinorId:
    """Names the minor with row set ``rows`` and column set ``cols``."""

    rows: IndexSet
    cols: IndexSet

    def __post_init__(self):
        object.__setattr__(self, "rows", index_set(self.rows))
        object.__setattr__(self, "cols", index_set(self.cols))
        if len(self.rows) != len(self.cols):
            raise ValueError(
                f"row and column sets must have equal cardinality, got {self.rows} and {self.cols}"
            )

    def size(self) -> int:
        return len(self.rows)

    def label(self) -> str:
        r = ",".join(map(str, self.rows))
        c = ",".join(map(str, self.cols))
        return f"D[{{{r}}},{{{c}}}]"


def inversions(perm: Sequence[int]) -> int:
    count = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                count += 1
    return count


@lru_cache(maxsize=4096)
def _minor_columns_cached(n: int, rows: tuple, cols: tuple) -> Element:
    m = len(rows)
    terms = []
    for perm in permutations(range(m)):
        coeff = LaurentQ({inversions(perm): (-1) ** inversions(perm)})
        word = tuple((rows[i], cols[perm[i]]) for i in range(m))
        terms.append((coeff, word))
    return normal_form(n, terms)


def quantum_minor_columns(n: int, rows: Iterable[int], col_list: Sequence[int]) -> Element:
    """Permutation-sum q-determinant over an explicitly ordered column list.

    The column list may be unsorted; the sum is taken literally over the list
    as given.  Column lists in different orders give genuinely different
    elements (the q-determinant is not alternating), which is why the sorted
    form below is the canonical one.
    """
    rows = index_set(rows)
    cols = tuple(col_list)
    if len(set(cols)) != len(cols):
        raise ValueError(f"column labels must be distinct, got {cols!r}")
    if len(rows) != len(cols):
        raise ValueError("row and column lists must have equal length")
    return _minor_columns_cached(n, rows, cols)


def quantum_minor(n: int, rows: Iterable[int], cols: Iterable[int]) -> Element:
    """The quantum minor ``D`` for sorted row and column sets."""
    rows = index_set(rows)
    cols = index_set(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal cardinality")
    if rows[-1] > n or cols[-1] > n:
        raise ValueError(f"labels exceed the matrix size n = {n}")
    return quantum_minor_columns(n, rows, cols)


def minor_element(n: int, minor: MinorId) -> Element:
    return quantum_minor(n, minor.rows, minor.cols)


def column_replace(labels: Iterable[int], position: int, label: int) -> IndexSet:
    """Replace the entry at 1-based ``position`` with ``label`` and re-sort.

    The new label must not already occur in the list.
    """
    t = index_set(labels)
    if not (1 <= position <= len(t)):
        raise ValueError(f"position {position} out of range for {t!r}")
    if label in t:
        raise ValueError(f"label {label} already present in {t!r}")
    replaced = t[: position - 1] + (label,) + t[position:]
    return tuple(sorted(replaced))


def qcommutation_probe(a: Element, b: Element) -> Optional[int]:
    """The unique integer r with ``NF(ab) = q^r NF(ba)``, or None.

    Both inputs must be nonzero and homogeneous; the probe measures the
    exponent, it never assumes one.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("q-commutation probe requires nonzero inputs")
    if a.multidegree() is None or b.multidegree() is None:
        raise ValueError("q-commutation probe requires homogeneous inputs")
    ab = a * b
    ba = b * a
    terms_ab = ab.terms()
    terms_ba = ba.terms()
    if len(terms_ab) != len(terms_ba):
        return None
    if not terms_ab:
        return 0
    w0, c_ab = terms_ab[0]
    c_ba = ba.coeff(w0)
    if c_ba.is_zero():
        return None
    r = c_ab.min_exp() - c_ba.min_exp()
    q_r = LaurentQ.q_power(r)
    if all(ab.coeff(w) == q_r * c for w, c in terms_ba):
        return r
    return None
