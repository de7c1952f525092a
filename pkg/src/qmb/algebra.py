"""The quantum matrix algebra on an n x n array of generators.

Elements are finite Laurent-coefficient combinations of normal-ordered words
in the generators ``t[i,j]``.  A word is normal-ordered when its letters are
non-decreasing in the lexicographic order on ``(row, col)``; the defining
quadratic relations orient into a terminating, confluent rewrite system with
respect to that order, so every element has a unique normal form (a PBW
basis representation).

The rewrite rule for an adjacent out-of-order pair ``x = t[a,b]``,
``y = t[c,d]`` with ``(a,b) > (c,d)``:

* same row or same column:        ``x y -> q^-1 y x``
* ``a > c`` and ``b < d``:        ``x y -> y x``
* ``a > c`` and ``b > d``:        ``x y -> y x - (q - q^-1) t[c,b] t[a,d]``

Every rule preserves the multiset of row labels and of column labels, so the
algebra is graded by that pair of multisets (the multidegree); all searches
downstream are confined to finite multidegree components.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .scalars import ONE, Q_MINUS_QINV, QINV, LaurentQ, ScalarLike

Gen = tuple[int, int]
Word = tuple[Gen, ...]

DEGREE_CAP_ENV = "QMB_MAX_DEGREE"
_DEFAULT_DEGREE_CAP = 16


class ContextMismatchError(ValueError):
    """Raised when elements from different-size algebras are combined."""


class DegreeCapError(RuntimeError):
    """Raised when a normal-form computation would exceed the degree cap."""


def degree_cap() -> int:
    raw = os.environ.get(DEGREE_CAP_ENV)
    if raw is None:
        return _DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{DEGREE_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{DEGREE_CAP_ENV} must be positive")
    return cap


def _check_cap(deg: int) -> None:
    cap = degree_cap()
    if deg > cap:
        raise DegreeCapError(f"normal-form degree {deg} exceeds cap {cap} (set {DEGREE_CAP_ENV} to raise)")


# -- word-level rewriting ------------------------------------------------------

_MINUS_QMQI = -Q_MINUS_QINV

# (sorted word, appended generator) -> tuple of (sorted word, coefficient)
_APPEND_CACHE: dict[tuple[Word, Gen], tuple[tuple[Word, LaurentQ], ...]] = {}
# (sorted word, sorted word) -> tuple of (sorted word, coefficient)
_WORD_MUL_CACHE: dict[tuple[Word, Word], tuple[tuple[Word, LaurentQ], ...]] = {}


def clear_caches() -> None:
    _APPEND_CACHE.clear()
    _WORD_MUL_CACHE.clear()


def _append_gen(word: Word, g: Gen) -> tuple[tuple[Word, LaurentQ], ...]:
    """Normal form of (sorted word) * (generator), as sorted words with coefficients.

    Every letter of every output word is bounded by max(word letters, g), so
    appending a letter that dominates the input stays sorted; the recursion
    below relies on this.
    """
    key = (word, g)
    hit = _APPEND_CACHE.get(key)
    if hit is not None:
        return hit
    if not word or word[-1] <= g:
        out: tuple[tuple[Word, LaurentQ], ...] = ((word + (g,), ONE),)
        _APPEND_CACHE[key] = out
        return out
    x = word[-1]
    p = word[:-1]
    a, b = x
    c, d = g
    if a == c or b == d:
        out = tuple((w + (x,), cf * QINV) for w, cf in _append_gen(p, g))
    elif b < d:
        out = tuple((w + (x,), cf) for w, cf in _append_gen(p, g))
    else:
        acc: dict[Word, LaurentQ] = {w + (x,): cf for w, cf in _append_gen(p, g)}
        for w1, c1 in _append_gen(p, (c, b)):
            c1 = c1 * _MINUS_QMQI
            for w2, c2 in _append_gen(w1, (a, d)):
                key2 = w2
                s = acc.get(key2)
                s = c1 * c2 if s is None else s + c1 * c2
                if s.is_zero():
                    acc.pop(key2, None)
                else:
                    acc[key2] = s
        out = tuple(sorted(acc.items()))
    _APPEND_CACHE[key] = out
    return out


def _word_mul(u: Word, v: Word) -> tuple[tuple[Word, LaurentQ], ...]:
    """Normal form of the concatenation of two sorted words."""
    if not v:
        return ((u, ONE),)
    if not u:
        return ((v, ONE),)
    key = (u, v)
    hit = _WORD_MUL_CACHE.get(key)
    if hit is not None:
        return hit
    cur: dict[Word, LaurentQ] = {u: ONE}
    for g in v:
        nxt: dict[Word, LaurentQ] = {}
        for w, cf in cur.items():
            for w2, c2 in _append_gen(w, g):
                s = nxt.get(w2)
                s = cf * c2 if s is None else s + cf * c2
                if s.is_zero():
                    nxt.pop(w2, None)
                else:
                    nxt[w2] = s
        cur = nxt
    out = tuple(sorted(cur.items()))
    _WORD_MUL_CACHE[key] = out
    return out


def rewrite_pair(x: Gen, y: Gen) -> list[tuple[LaurentQ, Word]]:
    """One rewrite step on the out-of-order adjacent pair ``x y`` (``x > y``)."""
    a, b = x
    c, d = y
    if a == c or b == d:
        return [(QINV, (y, x))]
    if b < d:
        return [(ONE, (y, x))]
    return [(ONE, (y, x)), (_MINUS_QMQI, ((c, b), (a, d)))]


def reduce_terms(
    terms: Iterable[tuple[LaurentQ, Word]],
    strategy: str = "leftmost",
) -> dict[Word, LaurentQ]:
    """Rewrite an arbitrary term list to normal form with an explicit agenda.

    ``strategy`` picks which out-of-order adjacent pair to reduce first
    (``leftmost`` or ``rightmost``); the result is strategy-independent, which
    the test suite exercises as confluence evidence.  This reducer is kept
    independent of the cached multiplication path on purpose.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rightmost = strategy == "rightmost"
    acc: dict[Word, LaurentQ] = {}
    agenda: list[tuple[LaurentQ, Word]] = [(cf, w) for cf, w in terms]
    while agenda:
        cf, w = agenda.pop()
        if cf.is_zero():
            continue
        pos = -1
        rng: Iterable[int] = range(len(w) - 2, -1, -1) if rightmost else range(len(w) - 1)
        for i in rng:
            if w[i] > w[i + 1]:
                pos = i
                break
        if pos < 0:
            s = acc.get(w)
            s = cf if s is None else s + cf
            if s.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = s
            continue
        for c2, pair in rewrite_pair(w[pos], w[pos + 1]):
            agenda.append((cf * c2, w[:pos] + pair + w[pos + 2 :]))
    return acc


# -- multidegree ---------------------------------------------------------------


@dataclass(frozen=True)
class MultiDegree:
    """Row-label and column-label counts of a homogeneous element."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if sum(self.rows) != sum(self.cols):
            raise ValueError("row and column counts must have equal totals")

    @classmethod
    def of_word(cls, n: int, word: Word) -> "MultiDegree":
        rows = [0] * n
        cols = [0] * n
        for i, j in word:
            rows[i - 1] += 1
            cols[j - 1] += 1
        return cls(tuple(rows), tuple(cols))

    def total(self) -> int:
        return sum(self.rows)

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        return MultiDegree(
            tuple(a + b for a, b in zip(self.rows, other.rows)),
            tuple(a + b for a, b in zip(self.cols, other.cols)),
        )

    def minus(self, other: "MultiDegree") -> Optional["MultiDegree"]:
        """Componentwise difference, or None when any entry would go negative."""
        rows = tuple(a - b for a, b in zip(self.rows, other.rows))
        cols = tuple(a - b for a, b in zip(self.cols, other.cols))
        if any(v < 0 for v in rows) or any(v < 0 for v in cols):
            return None
        return MultiDegree(rows, cols)


# -- elements ------------------------------------------------------------------


def _validate_gen(n: int, g: Gen) -> None:
    if not (isinstance(g, tuple) and len(g) == 2):
        raise ValueError(f"generator index must be a (row, col) pair, got {g!r}")
    i, j = g
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"generator t[{i},{j}] out of range for n = {n}")


class Element:
    """An algebra element in canonical normal form.

    Immutable value type: a sparse association from normal-ordered words to
    nonzero Laurent coefficients, tagged with the matrix size ``n``.
    """

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Optional[Iterable[tuple[Word, ScalarLike]]] = None):
        if n < 1:
            raise ValueError("matrix size n must be at least 1")
        self.n = n
        if terms is None:
            self._t: dict[Word, LaurentQ] = {}
            return
        pending: list[tuple[LaurentQ, Word]] = []
        for word, cf in terms:
            word = tuple(word)
            for g in word:
                _validate_gen(n, g)
            pending.append((LaurentQ.coerce(cf), word))
        self._t = reduce_terms(pending)

    @classmethod
    def _make(cls, n: int, terms: dict[Word, LaurentQ]) -> "Element":
        out = object.__new__(cls)
        out.n = n
        out._t = terms
        return out

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls._make(n, {})

    @classmethod
    def unit(cls, n: int) -> "Element":
        return cls._make(n, {(): ONE})

    @classmethod
    def scalar(cls, n: int, value: ScalarLike) -> "Element":
        value = LaurentQ.coerce(value)
        return cls._make(n, {} if value.is_zero() else {(): value})

    @classmethod
    def generator(cls, n: int, i: int, j: int) -> "Element":
        _validate_gen(n, (i, j))
        return cls._make(n, {((i, j),): ONE})

    # -- queries ----------------------------------------------------------

    def terms(self) -> list[tuple[Word, LaurentQ]]:
        """Terms in the global word order: by length, then lexicographically."""
        return sorted(self._t.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def coeff(self, word: Word) -> LaurentQ:
        return self._t.get(tuple(word), LaurentQ.zero())

    def is_zero(self) -> bool:
        return not self._t

    def degree(self) -> int:
        """Maximal word length (0 for scalars; -1 for the zero element)."""
        if not self._t:
            return -1
        return max(len(w) for w in self._t)

    def term_count(self) -> int:
        return len(self._t)

    def multidegree(self) -> Optional[MultiDegree]:
        """The common multidegree of all words, or None when inhomogeneous."""
        if not self._t:
            return None
        degs = {MultiDegree.of_word(self.n, w) for w in self._t}
        if len(degs) > 1:
            return None
        return degs.pop()

    def homogeneous_components(self) -> dict[MultiDegree, "Element"]:
        comps: dict[MultiDegree, dict[Word, LaurentQ]] = {}
        for w, c in self._t.items():
            comps.setdefault(MultiDegree.of_word(self.n, w), {})[w] = c
        return {d: Element._make(self.n, t) for d, t in sorted(comps.items(), key=lambda kv: (kv[0].rows, kv[0].cols))}

    # -- arithmetic --------------------------------------------------------

    def _check_context(self, other: "Element") -> None:
        if self.n != other.n:
            raise ContextMismatchError(f"mixing algebras of size {self.n} and {other.n}")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check_context(other)
        acc = dict(self._t)
        for w, c in other._t.items():
            s = acc.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = s
        return Element._make(self.n, acc)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element._make(self.n, {w: -c for w, c in self._t.items()})

    def scale(self, value: ScalarLike) -> "Element":
        value = LaurentQ.coerce(value)
        if value.is_zero():
            return Element.zero(self.n)
        return Element._make(self.n, {w: c * value for w, c in self._t.items()})

    def __mul__(self, other: Union["Element", ScalarLike]) -> "Element":
        if isinstance(other, (int, Fraction, LaurentQ)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check_context(other)
        if not self._t or not other._t:
            return Element.zero(self.n)
        _check_cap(self.degree() + other.degree())
        acc: dict[Word, LaurentQ] = {}
        for w1, c1 in self._t.items():
            for w2, c2 in other._t.items():
                c = c1 * c2
                for w, cf in _word_mul(w1, w2):
                    s = acc.get(w)
                    s = c * cf if s is None else s + c * cf
                    if s.is_zero():
                        acc.pop(w, None)
                    else:
                        acc[w] = s
        return Element._make(self.n, acc)

    def __rmul__(self, other: ScalarLike) -> "Element":
        if isinstance(other, (int, Fraction, LaurentQ)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, m: int) -> "Element":
        if m < 0:
            raise ValueError("negative powers are not defined in the algebra")
        out = Element.unit(self.n)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base if m > 1 else base
            m >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms())))

    def __bool__(self) -> bool:
        return bool(self._t)

    # -- structural maps ---------------------------------------------------

    def transpose(self) -> "Element":
        """Image under the index swap ``t[i,j] -> t[j,i]`` (an algebra map)."""
        pending = [(c, tuple((j, i) for i, j in w)) for w, c in self._t.items()]
        return Element._make(self.n, reduce_terms(pending))

    def antitranspose(self) -> "Element":
        """Image under ``t[i,j] -> t[n+1-j, n+1-i]`` with word reversal.

        This is an anti-automorphism (it reverses products), used to derive
        right-sided statements from left-sided ones.
        """
        n = self.n
        pending = [
            (c, tuple((n + 1 - j, n + 1 - i) for i, j in reversed(w)))
            for w, c in self._t.items()
        ]
        return Element._make(self.n, reduce_terms(pending))

    def specialize(self, q0: Union[int, Fraction]) -> dict[Word, Fraction]:
        """Coefficients evaluated at ``q = q0``; at ``q0 = 1`` the keys read as
        commutative monomials (each word is already the sorted multiset)."""
        q0 = Fraction(q0)
        if not q0:
            raise ValueError("specialization point q0 must be nonzero")
        out: dict[Word, Fraction] = {}
        for w, c in self._t.items():
            v = c.specialize(q0)
            if v:
                out[w] = v
        return out

    # -- text --------------------------------------------------------------

    def render(self) -> str:
        """Canonical text: ``(coeff) * t[i,j] ...`` terms joined by `` + ``."""
        if not self._t:
            return "0"
        parts = []
        for w, c in self.terms():
            mono = " ".join(f"t[{i},{j}]" for i, j in w) if w else "1"
            parts.append(f"({c.render()}) * {mono}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Element(n={self.n}, {self.render()!r})"


def normal_form(n: int, terms: Iterable[tuple[ScalarLike, Iterable[Gen]]], strategy: str = "leftmost") -> Element:
    """Normal form of an unreduced term list ``[(coeff, word), ...]``."""
    pending = []
    for cf, word in terms:
        word = tuple(word)
        for g in word:
            _validate_gen(n, g)
        _check_cap(len(word))
        pending.append((LaurentQ.coerce(cf), word))
    return Element._make(n, reduce_terms(pending, strategy=strategy))


def commutator(a: Element, b: Element) -> Element:
    """``NF(ab - ba)``."""
    return a * b - b * a


def commutative_product(p: dict[Word, Fraction], r: dict[Word, Fraction]) -> dict[Word, Fraction]:
    """Product in the commutative polynomial ring (specialized images live there)."""
    out: dict[Word, Fraction] = {}
    for w1, c1 in p.items():
        for w2, c2 in r.items():
            w = tuple(sorted(w1 + w2))
            s = out.get(w, Fraction(0)) + c1 * c2
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return out


# -- PBW bases of multidegree components ----------------------------------------


def basis_monomials(n: int, rows: tuple[int, ...], cols: tuple[int, ...]) -> list[Word]:
    """All normal-ordered words of the given multidegree.

    These are in bijection with n x n nonnegative-integer matrices having the
    prescribed row and column sums (the entry ``m[i][j]`` is the multiplicity
    of the letter ``t[i,j]``); the word lists the letters in sorted order.
    """
    if len(rows) != n or len(cols) != n:
        raise ValueError("row and column count vectors must have length n")
    if any(v < 0 for v in rows) or any(v < 0 for v in cols):
        raise ValueError("counts must be nonnegative")
    if sum(rows) != sum(cols):
        raise ValueError(f"unbalanced multidegree: row total {sum(rows)} != column total {sum(cols)}")

    out: list[Word] = []
    word: list[Gen] = []

    def fill_row(i: int, remaining_cols: list[int]) -> None:
        if i == n:
            if all(v == 0 for v in remaining_cols):
                out.append(tuple(word))
            return
        target = rows[i]

        def place(j: int, left: int) -> None:
            if j == n:
                if left == 0:
                    fill_row(i + 1, remaining_cols)
                return
            limit = min(left, remaining_cols[j])
            for k in range(limit + 1):
                if k:
                    remaining_cols[j] -= k
                    word.extend([(i + 1, j + 1)] * k)
                place(j + 1, left - k)
                if k:
                    remaining_cols[j] += k
                    del word[-k:]

        place(0, target)

    fill_row(0, list(cols))
    out.sort()
    return out
