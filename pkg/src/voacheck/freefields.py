"""Mode algebra and Fock states of the free fields b, c, beta, gamma, j.

Mode expansions (z-exponent ``-n - weight``)::

    b(z)     = sum b(n) z^{-n}          fermionic, weight 0
    c(z)     = sum c(n) z^{-n-1}        fermionic, weight 1
    beta(z)  = sum beta(n) z^{-n}       bosonic,   weight 0
    gamma(z) = sum gamma(n) z^{-n-1}    bosonic,   weight 1
    j(z)     = sum j(n) z^{-n-1}        bosonic,   weight 1

with {b(m), c(n)} = [gamma(m), beta(n)] = delta_{m,-n} and
[j(m), j(n)] = m delta_{m,-n}.  The vacuum is killed by b(n), beta(n) for
n >= 1 and by c(n), gamma(n), j(n) for n >= 0, except that j(0) acts on the
Heisenberg vacuum |alpha> by the momentum alpha.

A basis vector is a key ``(alpha, monomial)`` where ``monomial`` is a sorted
tuple of creation modes ``(field, n)``, ordered b < c < beta < gamma < j and
then by mode index.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .scalars import ONE, ZERO, Scalar, as_scalar

FIELDS = ("b", "c", "beta", "gamma", "j")
FIELD_ORDER = {f: i for i, f in enumerate(FIELDS)}
FERMIONIC = frozenset({"b", "c"})
WEIGHT = {"b": 0, "c": 1, "beta": 0, "gamma": 1, "j": 1}
# F(n) annihilates the vacuum iff n >= ANNIHILATES_FROM[F]
ANNIHILATES_FROM = {"b": 1, "c": 0, "beta": 1, "gamma": 0, "j": 0}

Mode = tuple  # (field, n)


def is_annihilator(field: str, n: int) -> bool:
    return n >= ANNIHILATES_FROM[field]


def _bracket(ann: Mode, cre: Mode) -> int:
    """Value of [ann, cre} (anticommutator for two fermions), always central."""
    f, n = ann
    g, k = cre
    if n + k != 0:
        return 0
    if f == "b" and g == "c" or f == "c" and g == "b":
        return 1
    if f == "gamma" and g == "beta":
        return 1
    if f == "beta" and g == "gamma":
        return -1
    if f == "j" and g == "j":
        return n
    return 0


def mode_sort_key(mode: Mode):
    return (FIELD_ORDER[mode[0]], mode[1])


def monomial_level(mono) -> int:
    return -sum(n for _, n in mono)


def bc_charge(mono) -> int:
    """Eigenvalue of j^{bc}_0: c-modes count +1, b-modes -1."""
    return sum(1 for f, _ in mono if f == "c") - sum(1 for f, _ in mono if f == "b")


def bg_charge(mono) -> int:
    """Eigenvalue of -J^0_0: gamma-modes count +1, beta-modes -1."""
    return sum(1 for f, _ in mono if f == "gamma") - sum(1 for f, _ in mono if f == "beta")


@lru_cache(maxsize=None)
def apply_mode_to_key(mode: Mode, key) -> tuple:
    """Action of one mode on one basis key, as a tuple of (key, coefficient)."""
    field, n = mode
    alpha, mono = key
    if not is_annihilator(field, n):
        return _insert_creator(mode, key)
    out: dict = {}
    fermion = field in FERMIONIC
    passed = 0
    for pos, m in enumerate(mono):
        val = _bracket(mode, m)
        if val:
            coeff = -val if (fermion and passed % 2) else val
            rest = (alpha, mono[:pos] + mono[pos + 1 :])
            out[rest] = out.get(rest, 0) + coeff
        if m[0] in FERMIONIC:
            passed += 1
    result = [(k, as_scalar(v)) for k, v in out.items() if v]
    if field == "j" and n == 0 and alpha:
        result.append((key, alpha))
    return tuple(result)


def _insert_creator(mode: Mode, key) -> tuple:
    alpha, mono = key
    sk = mode_sort_key(mode)
    fermion = mode[0] in FERMIONIC
    if fermion and mode in mono:
        return ()
    pos = 0
    sign = 1
    while pos < len(mono) and mode_sort_key(mono[pos]) < sk:
        if fermion and mono[pos][0] in FERMIONIC:
            sign = -sign
        pos += 1
    new = mono[:pos] + (mode,) + mono[pos:]
    return (((alpha, new), ONE if sign > 0 else -ONE),)


class FockState:
    """Finite linear combination of basis keys ``(alpha, monomial)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        for k, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                self.terms[k] = c

    @classmethod
    def vacuum(cls, alpha=0) -> "FockState":
        return cls({(as_scalar(alpha), ()): ONE})

    @classmethod
    def basis(cls, key) -> "FockState":
        return cls({key: ONE})

    @classmethod
    def from_modes(cls, modes, alpha=0) -> "FockState":
        """The state m_1 m_2 ... m_k |alpha>, applying m_k first."""
        v = cls.vacuum(alpha)
        for m in reversed(list(modes)):
            v = apply_mode(m, v)
        return v

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, FockState):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return FockState(out)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, s):
        s = as_scalar(s)
        if not s:
            return FockState()
        return FockState({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def levels(self) -> set:
        return {monomial_level(m) for _, m in self.terms}

    @property
    def level(self) -> int:
        lv = self.levels()
        if len(lv) != 1:
            raise ValueError("state is not homogeneous in level")
        return lv.pop()

    @property
    def sector(self):
        """(bc_charge, heisenberg_momentum, bg_charge) of a homogeneous state."""
        secs = {(bc_charge(m), a, bg_charge(m)) for a, m in self.terms}
        if len(secs) != 1:
            raise ValueError("state is not in a single sector")
        return secs.pop()

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, ZERO)

    def __repr__(self):
        return f"FockState({self.render()})"

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=_key_sort):
            c = self.terms[k]
            parts.append(f"{c.text(compact=True)} * {render_key(k)}")
        return " + ".join(parts)


def _key_sort(key):
    alpha, mono = key
    return (monomial_level(mono), tuple(mode_sort_key(m) for m in mono), str(alpha))


def render_key(key) -> str:
    alpha, mono = key
    modes = " ".join(f"{f}({n})" for f, n in mono)
    fields = {f for f, _ in mono}
    if fields & {"beta", "gamma"}:
        vac = "|s=0>"
    elif alpha or "j" in fields:
        vac = f"|0;bc,a={alpha.text(compact=True)}>"
    else:
        vac = "|0;bc>"
    return f"{modes} {vac}" if modes else vac


_MODE_RE = re.compile(r"(b|c|beta|gamma|j)\((-?\d+)\)")


def parse_key(text: str, alpha=0):
    """Inverse of :func:`render_key` for the mode part; momentum given separately."""
    modes = [(f, int(n)) for f, n in _MODE_RE.findall(text)]
    v = FockState.from_modes(modes, alpha)
    if len(v.terms) != 1:
        raise ValueError(f"{text!r} is not a basis monomial")
    ((key, coeff),) = v.terms.items()
    return key, coeff


def apply_mode(mode: Mode, v: FockState) -> FockState:
    out: dict = {}
    for key, c in v.terms.items():
        for k2, c2 in apply_mode_to_key(mode, key):
            out[k2] = out.get(k2, ZERO) + c * c2
    return FockState(out)


def apply_modes(modes, v: FockState) -> FockState:
    """Apply m_1 m_2 ... m_k to v (m_k acts first)."""
    for m in reversed(list(modes)):
        v = apply_mode(m, v)
        if not v:
            break
    return v


def commutator_on(mode_a: Mode, mode_b: Mode, v: FockState) -> FockState:
    """[a, b} applied to v, graded by statistics."""
    ab = apply_mode(mode_a, apply_mode(mode_b, v))
    ba = apply_mode(mode_b, apply_mode(mode_a, v))
    if mode_a[0] in FERMIONIC and mode_b[0] in FERMIONIC:
        return ab + ba
    return ab - ba


# ---------------------------------------------------------------------------
# basis enumeration


@lru_cache(maxsize=None)
def _distinct_parts(total: int, count: int, minpart: int) -> tuple:
    """Strictly increasing tuples of ``count`` integers >= minpart summing to total."""
    if count == 0:
        return ((),) if total == 0 else ()
    out = []
    # smallest possible sum with first part p: p + (p+1) + ... + (p+count-1)
    p = minpart
    while count * p + count * (count - 1) // 2 <= total:
        for rest in _distinct_parts(total - p, count - 1, p + 1):
            out.append((p,) + rest)
        p += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _parts(total: int, count: int, minpart: int) -> tuple:
    """Weakly increasing tuples of ``count`` integers >= minpart summing to total."""
    if count == 0:
        return ((),) if total == 0 else ()
    out = []
    p = minpart
    while count * p <= total:
        for rest in _parts(total - p, count - 1, p):
            out.append((p,) + rest)
        p += 1
    return tuple(out)


@lru_cache(maxsize=None)
def bc_monomials(charge: int, level: int, with_b0: bool = True) -> tuple:
    """Basis of F^charge (j^{bc}_0 eigenvalue) at the given level."""
    out = []
    bmin = 0 if with_b0 else 1
    for nb in range(0, level + 2):
        nc = nb + charge
        if nc < 0:
            continue
        for lb in range(level + 1):
            for bs in _distinct_parts(lb, nb, bmin):
                for cs in _distinct_parts(level - lb, nc, 1):
                    mono = tuple(("b", -n) for n in reversed(bs)) + tuple(("c", -n) for n in reversed(cs))
                    out.append(mono)
    return tuple(out)


@lru_cache(maxsize=None)
def bg_monomials(charge: int, level: int) -> tuple:
    """Basis of M^charge (eigenvalue of -J^0_0) at the given level."""
    out = []
    for ng in range(max(0, charge), level + 1):
        nbeta = ng - charge
        for lg in range(ng, level + 1):
            for gs in _parts(lg, ng, 1):
                for bs in _parts(level - lg, nbeta, 0):
                    mono = tuple(("beta", -n) for n in reversed(bs)) + tuple(("gamma", -n) for n in reversed(gs))
                    out.append(mono)
    return tuple(out)


@lru_cache(maxsize=None)
def j_monomials(level: int) -> tuple:
    out = []
    for count in range(level + 1):
        for ps in _parts(level, count, 1):
            out.append(tuple(("j", -n) for n in reversed(ps)))
    return tuple(out)


_SPACE_RE = re.compile(r"^(F|Fbar|M)\^(-?\d+)(\*H)?$|^H$")


def parse_space(label: str):
    m = _SPACE_RE.match(label.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown space label {label!r}")
    if label.strip() == "H":
        return ("H", 0, True)
    return (m.group(1), int(m.group(2)), bool(m.group(3)))


def space_basis(label: str, level: int) -> list:
    """Basis keys of a graded piece.

    Labels: ``F^l``, ``Fbar^l``, ``M^l``, ``H``, ``F^l*H``, ``Fbar^l*H``.  Tensor
    products with H use the momentum i*l of the sector F^l (x) H_{il}; the
    grading there is the oscillator level.
    """
    kind, l, with_h = parse_space(label)
    zero = as_scalar(0)
    if kind == "H":
        return [(zero, m) for m in j_monomials(level)]
    if kind == "M":
        if with_h:
            raise ValueError("M^l has no H factor")
        return [(zero, m) for m in bg_monomials(l, level)]
    with_b0 = kind == "F"
    if not with_h:
        return [(zero, m) for m in bc_monomials(l, level, with_b0)]
    alpha = Scalar(0, l)
    out = []
    for lb in range(level + 1):
        for bm in bc_monomials(l, lb, with_b0):
            for jm in j_monomials(level - lb):
                out.append((alpha, bm + jm))
    return out


def graded_dim(label: str, level: int) -> int:
    if level < 0:
        return 0
    return len(space_basis(label, level))


def all_f_keys(max_level: int, charges=None, with_b0: bool = True) -> list:
    """Every bc basis key of level <= max_level (all charges unless restricted)."""
    if charges is None:
        lo = -(max_level + 1)
        charges = range(lo, max_level + 2)
    out = []
    for l in charges:
        for d in range(max_level + 1):
            out.extend((as_scalar(0), m) for m in bc_monomials(l, d, with_b0))
    return out


def n0_keys(max_level: int, charges=None) -> list:
    """Basis keys of N(0) = sum_l F^l (x) H_{il} up to oscillator level max_level."""
    if charges is None:
        charges = range(-(max_level + 1), max_level + 2)
    out = []
    for l in charges:
        for d in range(max_level + 1):
            out.extend(space_basis(f"F^{l}*H", d))
    return out
