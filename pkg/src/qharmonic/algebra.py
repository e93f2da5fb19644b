"""Normal-ordering *-Hopf algebra engine for A(SU_q(2)) and A(E_q(2)).

Elements are finite complex-linear combinations of normal-ordered monomials
at a fixed numeric q.  Monomials:

    CompactSU:  x^a u^b (u*)^c (x*)^d   stored as (a, b, c, d), a*d = 0
    EuclidE:    d^(h/2) z^b (z*)^c      stored as (h, b, c), h in Z

where d is the group-like generator delta and d^(1/2) is adjoined as a
formal invertible generator (its square is delta, and z d^(1/2) =
q d^(1/2) z).

The rewrite constants are the audited ones (see reps.audit_relations): the
CompactSU relation set is fixed by the l2 representation, which swaps the
two sphere relations relative to the commonly quoted form and reverses the
x-u exchange:

    x u  = q u x,   x u* = q u* x,   u x* = q x* u,   u* x* = q x* u*
    x x* = 1 - q^2 u u*,   x* x = 1 - u u*,   u u* = u* u

EuclidE:  z z* = q^-2 z* z,  z d = q^2 d z,  z* d = q^2 d z*,  d* = d^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, GeneratorSetError

COMPACT_SU = "CompactSU"
EUCLID_E = "EuclidE"

_SU_SYMBOLS = ("x", "u", "us", "xs")
_E2_SYMBOLS = ("dh", "z", "zs")

_ZERO_TOL = 1e-300


@dataclass(frozen=True)
class GeneratorSet:
    """Which algebra a monomial lives in, plus its ordered symbol list."""

    kind: str

    def __post_init__(self):
        if self.kind not in (COMPACT_SU, EUCLID_E):
            raise GeneratorSetError(f"unknown generator set kind {self.kind!r}")

    @property
    def symbols(self):
        return _SU_SYMBOLS if self.kind == COMPACT_SU else _E2_SYMBOLS


SU = GeneratorSet(COMPACT_SU)
E2 = GeneratorSet(EUCLID_E)


def _clean(terms):
    return {m: complex(c) for m, c in terms.items() if abs(c) > _ZERO_TOL}


class AlgebraElement:
    """Normal-ordered noncommutative Laurent polynomial at numeric q.

    terms maps monomial tuples to complex coefficients; no zero
    coefficients are stored.  Instances are immutable by convention: all
    operations return new elements.
    """

    __slots__ = ("gs", "q", "terms")

    def __init__(self, gs: GeneratorSet, q: float, terms: dict):
        self.gs = gs
        self.q = q
        self.terms = _clean(terms)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, gs, q):
        return cls(gs, q, {})

    @classmethod
    def one(cls, gs, q):
        return cls(gs, q, {_unit_mono(gs): 1.0})

    @classmethod
    def generator(cls, gs, q, symbol, power=1):
        return cls(gs, q, {_letter_mono(gs, symbol, power): 1.0})

    @classmethod
    def monomial(cls, gs, q, mono, coeff=1.0):
        return cls(gs, q, {tuple(mono): complex(coeff)})

    # -- ring structure --------------------------------------------------

    def _check(self, other):
        if self.gs != other.gs:
            raise GeneratorSetError("mixed generator sets")
        if self.q != other.q:
            raise GeneratorSetError(f"mixed deformation parameters {self.q} vs {other.q}")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = AlgebraElement(self.gs, self.q, {_unit_mono(self.gs): other})
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0.0) + c
        return AlgebraElement(self.gs, self.q, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.gs, self.q, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = AlgebraElement(self.gs, self.q, {_unit_mono(self.gs): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return AlgebraElement(self.gs, self.q, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m3, c3 in _mono_mul(self.gs, self.q, m1, m2).items():
                    out[m3] = out.get(m3, 0.0) + c1 * c2 * c3
        return AlgebraElement(self.gs, self.q, out)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative powers of elements are not defined")
        out = AlgebraElement.one(self.gs, self.q)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.gs == other.gs and self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.gs, self.q, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- diagnostics ------------------------------------------------------

    def coeff(self, mono):
        return self.terms.get(tuple(mono), 0.0)

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def distance(self, other):
        """Max coefficientwise deviation between two elements."""
        self._check(other)
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) for k in keys), default=0.0)

    def __repr__(self):
        return f"AlgebraElement({to_text(self)!r})"


def _unit_mono(gs):
    return (0, 0, 0, 0) if gs.kind == COMPACT_SU else (0, 0, 0)


def _letter_mono(gs, symbol, power=1):
    if gs.kind == COMPACT_SU:
        if symbol not in _SU_SYMBOLS:
            raise GeneratorSetError(f"unknown CompactSU generator {symbol!r}")
        if power < 0:
            raise DomainError(f"negative power on non-invertible generator {symbol!r}")
        mono = [0, 0, 0, 0]
        mono[_SU_SYMBOLS.index(symbol)] = power
        return tuple(mono)
    if symbol == "dh":
        return (power, 0, 0)
    if symbol == "d":
        h2 = Fraction(power) * 2
        if h2.denominator != 1:
            raise DomainError(f"delta power must be a half integer, got {power}")
        return (int(h2), 0, 0)
    if symbol == "ds":
        h2 = Fraction(power) * 2
        if h2.denominator != 1:
            raise DomainError(f"delta-star power must be a half integer, got {power}")
        return (-int(h2), 0, 0)
    if symbol in ("z", "zs"):
        if power < 0:
            raise DomainError(f"negative power on non-invertible generator {symbol!r}")
        return (0, power, 0) if symbol == "z" else (0, 0, power)
    raise GeneratorSetError(f"unknown EuclidE generator {symbol!r}")


# -- normal ordering ------------------------------------------------------


def _mono_mul(gs, q, m1, m2):
    """Product of two normal-ordered monomials as {monomial: coefficient}."""
    if gs.kind == EUCLID_E:
        h1, b1, c1 = m1
        h2, b2, c2 = m2
        # delta^(h2/2) moves left past z^b1 zs^c1: z d^(1/2) = q d^(1/2) z
        # per half unit; then z^b2 moves left past zs^c1: zs z = q^2 z zs.
        coeff = q ** (h2 * (b1 + c1) + 2 * c1 * b2)
        return {(h1 + h2, b1 + b2, c1 + c2): coeff}
    return _su_mono_mul(q, m1, m2)


def _su_mono_mul(q, m1, m2):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    if d1 == 0 or a2 == 0:
        if d1 == 0:
            # x^a2 moves left past u^b1 us^c1 (u x = q^-1 x u),
            # then u/us blocks merge; finally reduce the x | xs pair.
            coeff = q ** (-a2 * (b1 + c1))
            merged = (a1 + a2, b1 + b2, c1 + c2, d2)
        else:
            # a2 == 0: u^b2 us^c2 move left past xs^d1 (x* u = q^-1 u x*)
            coeff = q ** (-d1 * (b2 + c2))
            merged = (a1, b1 + b2, c1 + c2, d1 + d2)
        return {m: coeff * c for m, c in _su_reduce(q, merged).items()}
    # d1 > 0 and a2 > 0: collapse one x* x pair (x* x = 1 - u u*)
    left = (a1, b1, c1, d1 - 1)
    right = (a2 - 1, b2, c2, d2)
    out = {}
    for m, c in _su_mono_mul(q, left, right).items():
        out[m] = out.get(m, 0.0) + c
    uu_right = _su_mono_mul(q, (0, 1, 1, 0), right)
    for mid, cmid in uu_right.items():
        for m, c in _su_mono_mul(q, left, mid).items():
            out[m] = out.get(m, 0.0) - cmid * c
    return out


def _su_reduce(q, mono):
    """Eliminate coexisting x and x* powers via x x* = 1 - q^2 u u*."""
    a, b, c, d = mono
    if a == 0 or d == 0:
        return {mono: 1.0}
    # bring the last x next to xs: x u = q u x, x u* = q u* x
    coeff = q ** (b + c)
    out = {}
    for m, cc in _su_reduce(q, (a - 1, b, c, d - 1)).items():
        out[m] = out.get(m, 0.0) + coeff * cc
    for m, cc in _su_reduce(q, (a - 1, b + 1, c + 1, d - 1)).items():
        out[m] = out.get(m, 0.0) - coeff * q**2 * cc
    return out


def normal_order(word, gs: GeneratorSet, q: float) -> AlgebraElement:
    """Normal-order a word given as a sequence of (symbol, exponent) pairs.

    Returns the unique normal-ordered element equal to the word in the
    quotient algebra.  Symbols: x, u, us, xs (CompactSU); dh (= d^(1/2)),
    d, ds, z, zs (EuclidE).
    """
    out = AlgebraElement.one(gs, q)
    for symbol, power in word:
        out = out * AlgebraElement.monomial(gs, q, _letter_mono(gs, symbol, power))
    return out


def multiply(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    return f * g


# -- involution -----------------------------------------------------------


def star(f: AlgebraElement) -> AlgebraElement:
    """Antilinear involutive antihomomorphism."""
    out = {}
    if f.gs.kind == COMPACT_SU:
        for (a, b, c, d), coeff in f.terms.items():
            out[(d, c, b, a)] = out.get((d, c, b, a), 0.0) + coeff.conjugate()
    else:
        for (h, b, c), coeff in f.terms.items():
            # (d^(h/2) z^b zs^c)* = z^c zs^b d^(-h/2); reorder the delta
            # block left: q^(-h (b + c))
            mono = (-h, c, b)
            out[mono] = out.get(mono, 0.0) + coeff.conjugate() * f.q ** (-h * (b + c))
    return AlgebraElement(f.gs, f.q, out)


# -- tensor algebra -------------------------------------------------------


class TensorElement:
    """Element of the n-fold tensor power, legs independently normal-ordered."""

    __slots__ = ("gs", "q", "nlegs", "terms")

    def __init__(self, gs, q, nlegs, terms):
        self.gs = gs
        self.q = q
        self.nlegs = nlegs
        self.terms = _clean(terms)

    @classmethod
    def one(cls, gs, q, nlegs=2):
        return cls(gs, q, nlegs, {(_unit_mono(gs),) * nlegs: 1.0})

    @classmethod
    def from_legs(cls, *legs: AlgebraElement):
        gs, q = legs[0].gs, legs[0].q
        terms = {}
        from itertools import product

        for combo in product(*(leg.terms.items() for leg in legs)):
            key = tuple(m for m, _ in combo)
            coeff = 1.0
            for _, c in combo:
                coeff *= c
            terms[key] = terms.get(key, 0.0) + coeff
        return cls(gs, q, len(legs), terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0.0) + c
        return TensorElement(self.gs, self.q, self.nlegs, out)

    def __neg__(self):
        return TensorElement(self.gs, self.q, self.nlegs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return TensorElement(self.gs, self.q, self.nlegs, {k: c * other for k, c in self.terms.items()})
        if self.nlegs != other.nlegs:
            raise GeneratorSetError("tensor leg count mismatch")
        out = {}
        from itertools import product

        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                coeff0 = c1 * c2
                legs = [_mono_mul(self.gs, self.q, k1[leg], k2[leg]) for leg in range(self.nlegs)]
                for combo in product(*(d.items() for d in legs)):
                    key = tuple(m for m, _ in combo)
                    coeff = coeff0
                    for _, c in combo:
                        coeff *= c
                    out[key] = out.get(key, 0.0) + coeff
        return TensorElement(self.gs, self.q, self.nlegs, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = TensorElement.one(self.gs, self.q, self.nlegs)
        for _ in range(n):
            out = out * self
        return out

    def apply_leg(self, leg, func):
        """Map leg monomials through func(monomial) -> AlgebraElement and
        recombine, returning a TensorElement with the same leg count."""
        out = {}
        for key, coeff in self.terms.items():
            expanded = func(AlgebraElement.monomial(self.gs, self.q, key[leg]))
            for m, c in expanded.terms.items():
                nk = key[:leg] + (m,) + key[leg + 1 :]
                out[nk] = out.get(nk, 0.0) + coeff * c
        return TensorElement(self.gs, self.q, self.nlegs, out)

    def scalar_leg(self, leg, func):
        """Contract one leg with a scalar functional; returns a TensorElement
        with one fewer leg, or an AlgebraElement when one leg remains."""
        out = {}
        for key, coeff in self.terms.items():
            s = func(AlgebraElement.monomial(self.gs, self.q, key[leg]))
            nk = key[:leg] + key[leg + 1 :]
            out[nk] = out.get(nk, 0.0) + coeff * s
        if self.nlegs == 2:
            return AlgebraElement(self.gs, self.q, {k[0]: c for k, c in out.items()})
        return TensorElement(self.gs, self.q, self.nlegs - 1, out)

    def multiply_legs(self):
        """Multiply all legs together inside the algebra (the map m)."""
        out = AlgebraElement.zero(self.gs, self.q)
        for key, coeff in self.terms.items():
            prod = AlgebraElement.monomial(self.gs, self.q, key[0], coeff)
            for m in key[1:]:
                prod = prod * AlgebraElement.monomial(self.gs, self.q, m)
            out = out + prod
        return out

    def distance(self, other):
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) for k in keys), default=0.0)


# -- Hopf structure -------------------------------------------------------


def _coproduct_images(gs, q):
    if gs.kind == COMPACT_SU:
        x = AlgebraElement.generator(gs, q, "x")
        u = AlgebraElement.generator(gs, q, "u")
        us = AlgebraElement.generator(gs, q, "us")
        xs = AlgebraElement.generator(gs, q, "xs")
        return {
            "x": TensorElement.from_legs(x, x) - q * TensorElement.from_legs(u, us),
            "u": TensorElement.from_legs(x, u) + TensorElement.from_legs(u, xs),
            "us": TensorElement.from_legs(xs, us) + TensorElement.from_legs(us, x),
            "xs": TensorElement.from_legs(xs, xs) - q * TensorElement.from_legs(us, u),
        }
    one = AlgebraElement.one(gs, q)
    z = AlgebraElement.generator(gs, q, "z")
    zs = AlgebraElement.generator(gs, q, "zs")
    dh = AlgebraElement.generator(gs, q, "dh")
    dinv = AlgebraElement.generator(gs, q, "dh", -2)
    d = AlgebraElement.generator(gs, q, "dh", 2)
    return {
        "z": TensorElement.from_legs(z, one) + TensorElement.from_legs(d, z),
        "zs": TensorElement.from_legs(zs, one) + TensorElement.from_legs(dinv, zs),
        "dh": TensorElement.from_legs(dh, dh),
    }


def _mono_letters(gs, mono):
    """Monomial as a list of (symbol, exponent) with positive exponents,
    except dh which may be negative."""
    if gs.kind == COMPACT_SU:
        return [(s, e) for s, e in zip(_SU_SYMBOLS, mono) if e != 0]
    h, b, c = mono
    out = []
    if h:
        out.append(("dh", h))
    if b:
        out.append(("z", b))
    if c:
        out.append(("zs", c))
    return out


def coproduct(f: AlgebraElement) -> TensorElement:
    """Coalgebra map Delta, an algebra homomorphism into the tensor square."""
    images = _coproduct_images(f.gs, f.q)
    out = TensorElement(f.gs, f.q, 2, {})
    for mono, coeff in f.terms.items():
        term = TensorElement.one(f.gs, f.q, 2) * coeff
        for symbol, expo in _mono_letters(f.gs, mono):
            if symbol == "dh":
                # group-like: d^(h/2) (x) d^(h/2) for any integer h
                leg = AlgebraElement.generator(f.gs, f.q, "dh", expo)
                term = term * TensorElement.from_legs(leg, leg)
            else:
                term = term * (images[symbol] ** expo)
        out = out + term
    return out


def counit(f: AlgebraElement) -> complex:
    """epsilon: kills u, u*, z, z*; sends x, x*, delta powers to 1."""
    total = 0.0
    for mono, coeff in f.terms.items():
        if f.gs.kind == COMPACT_SU:
            _, b, c, _ = mono
            if b == 0 and c == 0:
                total += coeff
        else:
            _, b, c = mono
            if b == 0 and c == 0:
                total += coeff
    return total


def _antipode_images(gs, q):
    if gs.kind == COMPACT_SU:
        # Consistent with the audited relations; the commonly quoted
        # S(u) = -q u belongs to the reversed relation convention and fails
        # the antipode law here (see reps.audit_relations).
        return {
            "x": AlgebraElement.generator(gs, q, "xs"),
            "xs": AlgebraElement.generator(gs, q, "x"),
            "u": AlgebraElement.generator(gs, q, "u") * (-1.0 / q),
            "us": AlgebraElement.generator(gs, q, "us") * (-q),
        }
    dinv = AlgebraElement.generator(gs, q, "dh", -2)
    d = AlgebraElement.generator(gs, q, "dh", 2)
    return {
        "z": dinv * AlgebraElement.generator(gs, q, "z") * (-1.0),
        "zs": d * AlgebraElement.generator(gs, q, "zs") * (-1.0),
    }


def antipode(f: AlgebraElement) -> AlgebraElement:
    """Antihomomorphism S determined by the generator images."""
    images = _antipode_images(f.gs, f.q)
    out = AlgebraElement.zero(f.gs, f.q)
    for mono, coeff in f.terms.items():
        term = AlgebraElement.one(f.gs, f.q) * coeff
        for symbol, expo in reversed(_mono_letters(f.gs, mono)):
            if symbol == "dh":
                term = term * AlgebraElement.generator(f.gs, f.q, "dh", -expo)
            else:
                term = term * (images[symbol] ** expo)
        out = out + term
    return out


# -- bigrading and automorphisms (EuclidE) --------------------------------


@dataclass(frozen=True)
class Bigrade:
    """Left/right U(1)-coaction weights (i, j); half-integers allowed."""

    i: Fraction
    j: Fraction
    homogeneous: bool = True


def mono_bigrade(mono) -> tuple:
    h, b, c = mono
    return (Fraction(h, 2) + b - c, Fraction(h, 2))


def bigrade_of(f: AlgebraElement) -> Bigrade:
    """Bigrade from the U(1) homomorphism phi (z -> 0, delta -> t) applied
    to the coproduct legs; for monomials this reduces to
    i = h/2 + b - c, j = h/2."""
    if f.gs.kind != EUCLID_E:
        raise GeneratorSetError("bigrade_of is defined on EuclidE only")
    if not f.terms:
        return Bigrade(Fraction(0), Fraction(0), True)
    grades = {mono_bigrade(m) for m in f.terms}
    if len(grades) == 1:
        i, j = grades.pop()
        return Bigrade(i, j, True)
    return Bigrade(Fraction(0), Fraction(0), False)


def bigrade_components(f: AlgebraElement) -> dict:
    """Projection of f onto its homogeneous components {(i, j): element}."""
    out = {}
    for mono, coeff in f.terms.items():
        key = mono_bigrade(mono)
        out.setdefault(key, {})[mono] = coeff
    return {k: AlgebraElement(f.gs, f.q, v) for k, v in out.items()}


@dataclass(frozen=True)
class AutomorphismSpec:
    """One of the EuclidE automorphisms: tau (as printed in the source
    conventions), beta (momentum scaling, parameter p0), or sigma (the
    trace-compatible modular scaling q^(-2(i+j)) on bigrade (i, j))."""

    name: str
    p0: float = 1.0

    def __post_init__(self):
        if self.name not in ("tau", "beta", "sigma"):
            raise DomainError(f"unknown automorphism {self.name!r}")
        if self.name == "beta" and not self.p0 > 0:
            raise DomainError("beta needs p0 > 0")


def apply_automorphism(spec: AutomorphismSpec, f: AlgebraElement) -> AlgebraElement:
    if f.gs.kind != EUCLID_E:
        raise GeneratorSetError("automorphisms tau/beta/sigma act on EuclidE only")
    q = f.q
    out = {}
    for (h, b, c), coeff in f.terms.items():
        if spec.name == "tau":
            # tau(z) = q z, tau(z*) = q^-2 z*, tau(d^(1/2)) = q^-2 d^(1/2)
            factor = q ** (b - 2 * c - 2 * h)
        elif spec.name == "beta":
            factor = spec.p0 ** (b + c)
        else:
            # sigma(f) = q^(-2(i+j)) f on bigrade (i, j); i + j = h + b - c.
            # This is the scaling that satisfies the trace identity
            # Tr(g f rho^2) = Tr(sigma(f) g rho^2).
            factor = q ** (-2 * (h + b - c))
        out[(h, b, c)] = out.get((h, b, c), 0.0) + coeff * factor
    return AlgebraElement(f.gs, f.q, out)


# -- Hopf axiom verification ----------------------------------------------


def hopf_axiom_check(gs: GeneratorSet, q: float, sample) -> dict:
    """Check coassociativity, counit, and antipode laws on sample elements.

    Returns a report dict with the max coefficientwise deviation per law.
    """
    dev_coassoc = 0.0
    dev_counit = 0.0
    dev_antipode = 0.0
    for f in sample:
        cf = coproduct(f)
        # (Delta (x) id) Delta vs (id (x) Delta) Delta
        three_l = _coproduct_on_leg(cf, 0)
        three_r = _coproduct_on_leg(cf, 1)
        dev_coassoc = max(dev_coassoc, three_l.distance(three_r))
        # (eps (x) id) Delta = id = (id (x) eps) Delta
        lhs1 = cf.scalar_leg(0, counit)
        lhs2 = cf.scalar_leg(1, counit)
        dev_counit = max(dev_counit, lhs1.distance(f), lhs2.distance(f))
        # m (S (x) id) Delta = eps(.) 1 = m (id (x) S) Delta
        target = AlgebraElement.one(gs, q) * counit(f)
        lhs3 = cf.apply_leg(0, antipode).multiply_legs()
        lhs4 = cf.apply_leg(1, antipode).multiply_legs()
        dev_antipode = max(dev_antipode, lhs3.distance(target), lhs4.distance(target))
    return {
        "coassociativity": dev_coassoc,
        "counit": dev_counit,
        "antipode": dev_antipode,
        "samples": len(list(sample)),
    }


def _coproduct_on_leg(t: TensorElement, leg: int) -> TensorElement:
    """Apply the coproduct to one leg of a 2-leg tensor, giving 3 legs."""
    out = {}
    for key, coeff in t.terms.items():
        expanded = coproduct(AlgebraElement.monomial(t.gs, t.q, key[leg]))
        for (mL, mR), c in expanded.terms.items():
            if leg == 0:
                nk = (mL, mR, key[1])
            else:
                nk = (key[0], mL, mR)
            out[nk] = out.get(nk, 0.0) + coeff * c
    return TensorElement(t.gs, t.q, 3, out)


# -- serialization ---------------------------------------------------------


def _fmt_complex(c):
    if abs(c.imag) < 1e-307:
        return repr(c.real)
    return f"({c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}j)"


def _mono_text(gs, mono):
    parts = []
    if gs.kind == COMPACT_SU:
        for s, e in zip(_SU_SYMBOLS, mono):
            if e == 1:
                parts.append(s)
            elif e:
                parts.append(f"{s}^{e}")
    else:
        h, b, c = mono
        if h:
            parts.append(f"d^{h // 2}" if h % 2 == 0 else f"d^{h}/2")
        if b:
            parts.append("z" if b == 1 else f"z^{b}")
        if c:
            parts.append("zs" if c == 1 else f"zs^{c}")
    return " ".join(parts) if parts else "1"


def to_text(f: AlgebraElement) -> str:
    """Canonical text form 'coeff * mono + ...' with sorted monomials."""
    if not f.terms:
        return "0"
    bits = []
    for mono in sorted(f.terms):
        bits.append(f"{_fmt_complex(complex(f.terms[mono]))} * {_mono_text(f.gs, mono)}")
    return " + ".join(bits)


def to_json_terms(f: AlgebraElement) -> list:
    """JSON-friendly term list [[exponents...], [re, im]] in sorted order."""
    return [[list(m), [complex(c).real, complex(c).imag]] for m, c in sorted(f.terms.items())]
