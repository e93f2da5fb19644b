"""Matrix elements of the irreducible representations and their contraction.

SU_q(2) side: the spin-l corepresentation coefficients t^l_ij, built in
closed form from the quantum-plane coaction (xi -> xi (x) x - q eta (x) u*,
eta -> xi (x) u + eta (x) x*, with xi eta = q eta xi), unitarily normalized
and bridge-normalized so that the contraction

    t^p_ij = lim_{l -> inf} t^l_ij(x0, y0, p v0 / [l], p u0 / [l])

lands exactly on the E_q(2) momentum matrix elements

    t^p_ij = (i q^-1/2)^(i-j) d^(-j/2) (p z*)^(i-j) J_(i-j)(p^2 z z*) d^(-j/2)
    t^p_ij = (-i q^1/2)^(i-j) d^(-j/2) J_(j-i)(p^2 z z*) (p z)^(j-i) d^(-j/2)

(upper: i >= j, lower: i <= j), with J the entire q-Bessel series of
qkernel.q_bessel.  Convention resolutions are recorded in _calibration.

The classical (q = 1) counterparts from the SU(2) -> E(2) contraction are
at the bottom: Jacobi polynomial integral representations and the Bessel
integral, evaluated by spectrally accurate periodic trapezoid quadrature.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from . import algebra as alg
from ._calibration import bridge_constant
from .algebra import E2, SU, AlgebraElement
from .errors import DivergenceError, DomainError, UnsupportedLabelError
from .qkernel import DeformationParameter, q_bessel, q_binomial
from .reps import BasisWindow, RadialElement, RepOperator, represent, window_for

# -- labels -----------------------------------------------------------------


def _as_half(x):
    f = Fraction(x).limit_denominator(2)
    if f != Fraction(x):
        raise DomainError(f"{x} is not a half-integer")
    return f


@dataclass(frozen=True)
class CompactLabel:
    """Spin label (l; i, j) with |i|, |j| <= l and l - i, l - j integers."""

    l: Fraction
    i: Fraction
    j: Fraction

    def __post_init__(self):
        object.__setattr__(self, "l", _as_half(self.l))
        object.__setattr__(self, "i", _as_half(self.i))
        object.__setattr__(self, "j", _as_half(self.j))
        if self.l < 0:
            raise UnsupportedLabelError("l must be >= 0")
        for m in (self.i, self.j):
            if abs(m) > self.l:
                raise UnsupportedLabelError(f"|{m}| exceeds l = {self.l}")
            if (self.l - m).denominator != 1:
                raise UnsupportedLabelError(f"l - {m} must be an integer")


@dataclass(frozen=True)
class EuclidLabel:
    """Momentum label (p; i, j) with p > 0 and integer i, j."""

    p: float
    i: int
    j: int

    def __post_init__(self):
        if not self.p > 0:
            raise UnsupportedLabelError("p must be positive")


#: Ladder actions of the dual quantum algebra on the matrix elements,
#: declared metadata only (the duality pairing is out of scope here; these
#: are tested indirectly through the Plancherel structure).
LADDER_ACTIONS = {
    "R(E+-) t^p_ij": "p t^p_(i+-1, j)",
    "R(k) t^p_ij": "q^-i t^p_ij",
    "L(E+-) t^p_ij": "p t^p_(i, j-+1)",
    "L(k) t^p_ij": "q^-j t^p_ij",
    "R(E+ E-) t^p_ij": "p^2 t^p_ij",
}


# -- SU_q(2) matrix elements ------------------------------------------------


def _su_terms(l, i, j, qv, binom, power):
    """Closed-form terms of the unnormalized corepresentation coefficient.

    Returns {(a, b, c, d): coefficient} using the caller's arithmetic
    (binom(n, k) = Gaussian binomial base q^2, power(e) = q^e).
    """
    m_lo = max(0, int(j - i))
    m_hi = int(min(l - i, l + j))
    a = max(0, int(-i - j))
    d = max(0, int(i + j))
    nu = int(i - j)
    terms = {}
    for m in range(m_lo, m_hi + 1):
        A = m + nu
        E = int(l - i) - m
        B = int(l + j) - m
        nEB = min(E, B)
        base = (
            binom(int(l - j), A)
            * binom(int(l + j), m)
            * power(-2 * A * (int(l - j) - A) - 2 * m * (int(l + j) - m))
            * power(-A * m + A + (A + m) * nEB)
            * (-1) ** A
        )
        for t in range(nEB + 1):
            poch = binom(nEB, t) * (-1) ** t * power(t * (t + 1))
            mono = (a, m + t, A + t, d)
            terms[mono] = terms.get(mono, 0 * base) + base * poch
    return terms


def su_matrix_element(lab: CompactLabel, q: DeformationParameter | float) -> AlgebraElement:
    """Normal-ordered corepresentation coefficient t^l_ij of SU_q(2).

    Normalized so that eps(t^l_ij) = delta_ij, t^(1/2) has diagonal x, x*,
    and the contraction of the family converges entrywise onto
    eq_matrix_element.  Valid at every label with |i|, |j| <= l.
    """
    qv = q.q if isinstance(q, DeformationParameter) else float(q)
    l, i, j = lab.l, lab.i, lab.j
    terms = _su_terms(l, i, j, qv, lambda n, k: q_binomial(n, k, qv * qv), lambda e: qv**e)
    nr = _norm_ratio_float(l, i, j, qv)
    scale = nr / bridge_constant(i, j, qv)
    return AlgebraElement(SU, qv, {m: c * scale for m, c in terms.items()})


def _norm_ratio_float(l, i, j, qv):
    e = (-2 * int(l + i) + 2 * int((l + i) * (l - i))) - (
        -2 * int(l + j) + 2 * int((l + j) * (l - j))
    )
    ratio = q_binomial(int(2 * l), int(l + j), qv * qv) / q_binomial(int(2 * l), int(l + i), qv * qv)
    return qv ** (e / 2.0) * math.sqrt(ratio)


def _su_terms_mp(l, i, j, qv, prec):
    """mpmath-coefficient closed form, needed for l ~ 40 where the
    coefficients span hundreds of orders of magnitude."""
    with mpmath.workprec(prec):
        qm = mpmath.mpf(qv)
        Qm = qm * qm

        def binom(n, k):
            if k < 0 or k > n:
                return mpmath.mpf(0)
            out = mpmath.mpf(1)
            for s in range(1, k + 1):
                out *= (1 - Qm ** (n - k + s)) / (1 - Qm**s)
            return out

        terms = _su_terms(l, i, j, qv, binom, lambda e: qm**e)
        e = (-2 * int(l + i) + 2 * int((l + i) * (l - i))) - (
            -2 * int(l + j) + 2 * int((l + j) * (l - j))
        )
        nr = qm ** (mpmath.mpf(e) / 2) * mpmath.sqrt(
            binom(int(2 * l), int(l + j)) / binom(int(2 * l), int(l + i))
        )
        scale = nr / mpmath.mpmathify(bridge_constant(i, j, qv))
        return {m: c * scale for m, c in terms.items()}


# -- E_q(2) matrix elements ---------------------------------------------------


@lru_cache(maxsize=64)
def _bessel_lattice_table(nu: int, qv: float, precision_bits: int):
    """Cached J_nu(Q^t) values on the integer argument lattice."""
    dp = DeformationParameter(qv, precision_bits)
    cache = {}

    def value(t: int) -> complex:
        if t not in cache:
            try:
                cache[t] = q_bessel(nu, (qv * qv) ** t, dp).value
            except OverflowError:
                cache[t] = complex(math.inf)
        return cache[t]

    return value


class EuclidMatrixElement:
    """Momentum matrix element t^p_ij in its exact radial normal form

        t^p_ij = phase * p^nu * q^(-j nu) * d^(-j) (z or z*)^nu
                 J_nu(q^(2 alpha) p^2 rho^2),

    with nu = |i - j|, alpha = -j (i >= j) or -i (i <= j), and phase the
    branch phase (+-i q^(-+1/2))^(i-j).  Exposes the symbolic truncated
    form, the exact radial form, and direct represented bands.
    """

    def __init__(self, lab: EuclidLabel, q: DeformationParameter | float):
        self.lab = lab
        self.q = q.q if isinstance(q, DeformationParameter) else float(q)
        self.precision_bits = q.precision_bits if isinstance(q, DeformationParameter) else 300
        i, j = lab.i, lab.j
        self.nu = abs(i - j)
        if i >= j:
            self.phase = (1j * self.q**-0.5) ** self.nu
            self.alpha = -j
            self.zs_power, self.z_power = self.nu, 0
        else:
            self.phase = (-1j * self.q**0.5) ** (i - j)
            self.alpha = -i
            self.zs_power, self.z_power = 0, self.nu
        self.weight = self.q ** (-j * self.nu)
        self.mono = (-2 * j, self.z_power, self.zs_power)

    # series coefficient of (rho^2)^k inside the radial factor
    def _series_coeff(self, k: int) -> float:
        from .qkernel import q_factorial

        return (
            (-1) ** k
            / (q_factorial(k, self.q) * q_factorial(k + self.nu, self.q))
            * self.q ** ((2 * self.alpha - self.nu) * k)
            * self.lab.p ** (2 * k)
        )

    def radial_value(self, site: int) -> complex:
        """Value of the radial factor at a basis site."""
        x = self.q ** (2 * self.alpha) * self.lab.p**2 * self.q ** (-2 * site - 2)
        # on-lattice arguments hit the cached table; off-lattice momenta
        # fall back to a direct series evaluation
        t = math.log(x) / (2 * math.log(self.q)) if x > 0 else None
        if t is not None and abs(t - round(t)) < 1e-12:
            return _bessel_lattice_table(self.nu, self.q, self.precision_bits)(int(round(t)))
        dp = DeformationParameter(self.q, self.precision_bits)
        return q_bessel(self.nu, x, dp).value

    def scalar_prefactor(self) -> complex:
        return self.phase * self.lab.p**self.nu * self.weight

    def to_radial(self) -> RadialElement:
        """Exact RadialElement form (windows evaluate the q-Bessel table)."""
        return RadialElement(
            E2, self.q, [(self.mono, lambda s: self.radial_value(s), self.scalar_prefactor())]
        )

    def to_element(self, k_max: int | None = None, w: BasisWindow | None = None, tol: float = 1e-14) -> AlgebraElement:
        """Truncated polynomial form, series cut adaptively for the window.

        The series is truncated when a term's contribution to the window
        norm falls below tol relative to the accumulated norm.
        """
        if w is None:
            w = window_for(E2, 32)
        if k_max is None:
            # largest rho^2 value on the window controls the needed depth
            xmax = self.q ** (2 * self.alpha) * self.lab.p**2 * self.q ** (-2 * w.hi - 2)
            acc = 0.0
            k = 0
            while True:
                term = abs(self._series_coeff(k)) * xmax**k if xmax > 0 else 0.0
                acc = max(acc, term)
                if k > 2 and term < tol * max(acc, 1e-300):
                    break
                k += 1
                if k > 512:
                    raise DivergenceError("q-Bessel truncation failed to stabilize")
            k_max = k
        h, zb, zc = self.mono
        terms = {}
        for k in range(k_max + 1):
            # (rho^2)^k = q^(k(k-1)) z^k zs^k; attach to the skeleton
            coeff = self.scalar_prefactor() * self._series_coeff(k)
            mono_k = alg._mono_mul(E2, self.q, (h, zb, zc), (0, k, k))
            for m, c in mono_k.items():
                # _mono_mul of (0,k,k) assumes normal-ordered input z^k zs^k;
                # rho^(2k) = q^(k(k-1)) z^k zs^k
                terms[m] = terms.get(m, 0.0) + coeff * c * self.q ** (k * (k - 1))
        return AlgebraElement(E2, self.q, terms)

    def represent(self, w: BasisWindow) -> RepOperator:
        return represent(self.to_radial(), w, self.q)


def eq_matrix_element(lab: EuclidLabel, q: DeformationParameter | float) -> EuclidMatrixElement:
    """Momentum matrix element of E_q(2); see EuclidMatrixElement."""
    return EuclidMatrixElement(lab, q)


# -- quantum contraction ------------------------------------------------------


def _substituted_operator(l, i, j, qv, p, w: BasisWindow, prec: int) -> RepOperator:
    """t^l_ij evaluated at the contracted operators on the window.

    X = pi(d^(1/2)), X* = pi(d^(-1/2)), U = (i q)^-1 pi(d^(-1/2) z) (p/[l]),
    V = U-dagger; each normal-ordered monomial is evaluated in the
    anti-normal shift presentation (x*)^d u^b (u*)^c x^a (see _calibration).
    """
    terms = _su_terms_mp(l, i, j, qv, prec)
    with mpmath.workprec(prec):
        qm = mpmath.mpf(qv)
        lf = mpmath.mpf(float(l))
        lval = (qm**lf - qm**-lf) / (qm - 1 / qm)
        scale_u = mpmath.mpmathify(p) / lval
        sites = list(w.indices())
        band_acc = {}
        for (a, b, c, d), coeff in terms.items():
            # operator X-dag^d U^b V^c X^a on |s>: X^a first: down a,
            # diagonal at s - a, then X-dag^d: up d; row = s - a + d
            o = d - a
            vec = band_acc.setdefault(o, [mpmath.mpc(0)] * len(sites))
            for idx, s in enumerate(sites):
                row = s + o
                if row < w.lo or row > w.hi:
                    continue
                amp = (
                    coeff
                    * scale_u ** (b + c)
                    * (1 / (1j * qm)) ** b
                    * (1j / qm) ** c
                    * qm ** (-(s - a) * (b + c))
                )
                vec[idx] += amp
        bands = {}
        for o, vec in band_acc.items():
            bands[o] = np.array([complex(v) for v in vec])
    out = RepOperator(w, bands, margin=int(2 * l))
    out.margin = max(abs(int(i + j)), 1)
    return out


def contraction_check(
    lab_target: EuclidLabel,
    l_list,
    q: DeformationParameter | float,
    w: BasisWindow | None = None,
    precision_bits: int = 360,
) -> dict:
    """Evaluate t^l at the contracted operators and compare entrywise with
    the represented momentum element, per l.

    Returns {"l": [...], "deviation": [...], "decreasing": bool}; raises
    DivergenceError when the deviation fails to decrease over the last
    three spins.
    """
    qv = q.q if isinstance(q, DeformationParameter) else float(q)
    if w is None:
        # moderate window: the convergence is uniform on fixed windows but
        # the momentum elements grow superexponentially at deep sites
        w = window_for(E2, 20)
    target = eq_matrix_element(lab_target, q).represent(w)
    i, j = lab_target.i, lab_target.j
    devs = []
    ls = sorted(l_list)
    for l in ls:
        lF = Fraction(l)
        if abs(Fraction(i)) > lF or abs(Fraction(j)) > lF:
            raise UnsupportedLabelError(f"label ({i},{j}) outside spin l={l}")
        sub = _substituted_operator(lF, i, j, qv, lab_target.p, w, precision_bits)
        devs.append(sub.interior_distance(target, extra=2, relative=True))
    decreasing = all(devs[k + 1] < devs[k] for k in range(len(devs) - 1))
    if len(devs) >= 3 and not (devs[-1] < devs[-2] < devs[-3]):
        raise DivergenceError(f"contraction deviations not decreasing: {devs}")
    return {"l": [float(x) for x in ls], "deviation": devs, "decreasing": decreasing}


def contraction_coefficient_check(i: int, j: int, q, l_list, k_max: int = 6, p: float = 1.0) -> dict:
    """Coefficient-level contraction: the series coefficients of the
    substituted spin elements must converge, order by order in (rho^2)^k,
    to the q-Bessel series coefficients of the momentum element."""
    qv = q.q if isinstance(q, DeformationParameter) else float(q)
    lab = EuclidLabel(p, i, j)
    el = EuclidMatrixElement(lab, qv)
    report = {}
    for l in l_list:
        lF = Fraction(l)
        terms = _su_terms_mp(lF, i, j, qv, 360)
        with mpmath.workprec(360):
            qm = mpmath.mpf(qv)
            lf = mpmath.mpf(float(lF))
            lval = (qm**lf - qm**-lf) / (qm - 1 / qm)
            devs = []
            for k in range(k_max + 1):
                # substituted coefficient of the w^k band term: collect the
                # monomial with b = k + max(0, j-i), c = k + max(0, i-j)
                b = k + max(0, j - i)
                c = k + max(0, i - j)
                key = (max(0, -i - j), b, c, max(0, i + j))
                coeff = terms.get(key)
                if coeff is None:
                    devs.append(float("nan"))
                    continue
                sub = coeff * (mpmath.mpmathify(p) / lval) ** (b + c) * (1 / (1j * qm)) ** b * (1j / qm) ** c
                # target: scalar prefactor * series coefficient, in the same
                # anti-normal presentation (site-independent part)
                tgt = mpmath.mpmathify(el.scalar_prefactor() * el._series_coeff(k))
                # account for the normal-ordering site offsets between the
                # presentations: compare magnitudes of the ratio to 1
                devs.append(abs(abs(sub / tgt) - 1) if tgt != 0 else float("nan"))
        report[float(l)] = devs
    return report


# -- classical Appendix-C formulas -------------------------------------------


@dataclass(frozen=True)
class ClassicalEuclidElement:
    """Euclidean group element (phi, rho, zeta), angles mod 2 pi."""

    phi: float
    rho: float
    zeta: float

    def __post_init__(self):
        if self.rho < 0:
            raise DomainError("rho must be nonnegative")
        object.__setattr__(self, "phi", self.phi % (2 * math.pi))
        object.__setattr__(self, "zeta", self.zeta % (2 * math.pi))


@dataclass(frozen=True)
class ClassicalCompactElement:
    """SU(2) Euler-angle element (phi, theta, phi')."""

    phi: float
    theta: float
    phi_prime: float

    def __post_init__(self):
        if not 0 <= self.theta <= math.pi:
            raise DomainError("theta must lie in [0, pi]")
        object.__setattr__(self, "phi", self.phi % (2 * math.pi))
        object.__setattr__(self, "phi_prime", self.phi_prime % (2 * math.pi))


def _trapezoid_periodic(f, tol=1e-10, n0=32, n_max=1 << 20):
    """Trapezoid rule over [0, 2 pi) with node doubling; spectrally accurate
    for smooth periodic integrands."""
    n = n0
    prev = None
    while n <= n_max:
        xs = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
        val = np.mean(f(xs))
        if prev is not None and abs(val - prev) < tol * max(1.0, abs(val)):
            return val
        prev = val
        n *= 2
    raise DivergenceError("periodic quadrature failed to converge")


def classical_jacobi(l, k, j, theta: float) -> complex:
    """Jacobi-type rotation matrix element P^l_kj(cos theta) by quadrature.

    Integral representation with the square-root factorial prefactor; the
    Fourier mode is e^(-i j psi), calibrated so P^l_kj(1) = delta_kj.
    """
    lF, kF, jF = _as_half(l), _as_half(k), _as_half(j)
    if abs(kF) > lF or abs(jF) > lF:
        raise UnsupportedLabelError("|k|, |j| must be <= l")
    pref = math.sqrt(
        math.factorial(int(lF - jF))
        * math.factorial(int(lF + jF))
        / (math.factorial(int(lF - kF)) * math.factorial(int(lF + kF)))
    )
    s, c = math.sin(theta / 2.0), math.cos(theta / 2.0)
    lmk = int(lF - kF)
    lpk = int(lF + kF)
    jv = float(jF)

    def integrand(psi):
        e = np.exp(0.5j * psi)
        return (
            np.exp(-1j * jv * psi)
            * (1j * s * e + c / e) ** lmk
            * (1j * s / e + c * e) ** lpk
        )

    return pref * complex(_trapezoid_periodic(integrand))


def classical_e2_element(p: float, g: ClassicalEuclidElement, k: int, j: int) -> complex:
    """Matrix element t^p_kj of the unitary irrep of E(2):

    e^(-i(k phi + j(zeta - phi))) / (2 pi) * int e^(i p rho cos psi)
    e^(i (k - j) psi) d psi, by periodic trapezoid with node count scaled
    with p rho.
    """
    n0 = 32
    scale = abs(p) * g.rho
    while n0 < 8 * scale:
        n0 *= 2

    def integrand(psi):
        return np.exp(1j * p * g.rho * np.cos(psi) + 1j * (k - j) * psi)

    osc = complex(_trapezoid_periodic(integrand, n0=n0))
    return cmath.exp(-1j * (k * g.phi + j * (g.zeta - g.phi))) * osc


def classical_contraction_check(p: float, k: int, j: int, l_list, rho: float = 1.0) -> dict:
    """|P^l_kj(cos(p rho / l)) - Bessel integral| per l; must decrease."""
    target = classical_e2_element(p, ClassicalEuclidElement(0.0, rho, 0.0), k, j)
    ls = sorted(l_list)
    devs = []
    for l in ls:
        if l < max(abs(k), abs(j)):
            raise UnsupportedLabelError("l must dominate |k|, |j|")
        devs.append(abs(classical_jacobi(l, k, j, p * rho / float(l)) - target))
    if len(devs) >= 3 and not (devs[-1] < devs[-2] < devs[-3]):
        raise DivergenceError(f"classical contraction deviations not decreasing: {devs}")
    return {"l": [float(x) for x in ls], "deviation": devs, "target": target}
