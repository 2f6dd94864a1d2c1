"""Broadband squeezed resources from parametric-amplifier transfer functions.

A below-threshold nondegenerate parametric amplifier (NOPA) in a two-sided
cavity maps its input vacua onto a pair of output modes whose superpositions
are quadrature squeezed.  In a rotating frame at modulation frequency
``Omega`` the input-output relation is algebraic, so each source here is
just a frequency-indexed provider of complex transfer amplitudes:

* ``S_plus(omega)``  scales the noisy (antisqueezed) quadratures,
* ``S_minus(omega)`` scales the quiet (squeezed) quadratures,

and, for a lossy cavity, two more amplitudes couple in the loss-port vacua.
Superimposing the two decoupled squeezed modes on a balanced beamsplitter
yields the broadband EPR pair used by the teleportation pipeline.

Dimensionless parameterization: with pump ``kappa``, damping ``gamma`` and
intracavity loss ``rho``, set

    epsilon = 2*kappa/(gamma+rho),  omega = 2*Omega/(gamma+rho),
    beta    = gamma/(gamma+rho),

after which the lossless spectra read |S_minus|^2 = 1 - 4e/((1+e)^2 + w^2)
and |S_plus|^2 = 1 + 4e/((1-e)^2 + w^2).  At exact threshold (epsilon = 1,
omega = 0) the noisy amplitude diverges; sources report it as an IEEE
infinity and downstream consumers keep unit-gain results finite by applying
exactly-zero weights before multiplying (see EprPort).
"""

from __future__ import annotations

import abc
import bisect
import csv
import io
import math
from dataclasses import dataclass

from .linmode import Axis, QuadExpansion, combine

__all__ = [
    "CustomSpectrum",
    "EprPort",
    "EprQuadratures",
    "LosslessNopa",
    "LossyNopa",
    "NopaDimensionless",
    "NopaParams",
    "SqueezerSpectrum",
    "TransferPair",
    "ZeroBandwidth",
    "couple_modes",
    "make_epr_pair",
    "make_lossy_epr_pair",
    "nopa_transfer",
    "s_pair",
    "squeezing_spectrum",
]

_ROOT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class NopaParams:
    """Physical cavity rates of a parametric amplifier.

    Parameters
    ----------
    kappa:
        Pump-induced coupling rate, same units as gamma.
    gamma:
        Cavity damping rate through the output coupler.
    rho:
        Additional intracavity loss rate (0 for a lossless cavity).
    """

    kappa: float
    gamma: float
    rho: float = 0.0

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.rho < 0:
            raise ValueError("rho must be nonnegative")
        if self.kappa < 0:
            raise ValueError("kappa must be nonnegative")
        if self.kappa >= (self.gamma + self.rho) / 2:
            raise ValueError(
                "kappa must stay below the oscillation threshold (gamma+rho)/2"
            )

    @property
    def total_rate(self) -> float:
        return self.gamma + self.rho


@dataclass(frozen=True)
class NopaDimensionless:
    """One evaluation point of a NOPA in dimensionless form."""

    epsilon: float
    omega: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        if self.omega < 0:
            raise ValueError("omega must be nonnegative")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must lie in (0, 1]")

    @classmethod
    def from_physical(cls, params: NopaParams, big_omega: float) -> "NopaDimensionless":
        t = params.total_rate
        return cls(2 * params.kappa / t, 2 * big_omega / t, params.gamma / t)

    def to_physical(self, total_rate: float = 2.0) -> tuple[NopaParams, float]:
        """Invert the normalization for a given gamma+rho scale."""
        params = NopaParams(
            kappa=self.epsilon * total_rate / 2,
            gamma=self.beta * total_rate,
            rho=(1.0 - self.beta) * total_rate,
        )
        return params, self.omega * total_rate / 2


@dataclass(frozen=True)
class TransferPair:
    """Noisy/quiet transfer amplitudes of a squeezer at one frequency."""

    s_plus: complex
    s_minus: complex

    def bogoliubov_defect(self) -> float:
        """Re(S+ conj(S-)) - 1; zero for any loss-free squeezer."""
        return (self.s_plus * self.s_minus.conjugate()).real - 1.0

    def magnitudes_sq(self) -> tuple[float, float]:
        return abs(self.s_plus) ** 2, abs(self.s_minus) ** 2


@dataclass(frozen=True)
class EprPort:
    """One vacuum port of an EPR pair, in factored (weight, amplitude) form.

    The port contributes ``first*amplitude`` to the first pair mode and
    ``second*amplitude`` to the second, on the given quadrature axis.
    Keeping the weights separate from the (possibly infinite) amplitude lets
    consumers cancel the weight exactly before any multiplication happens,
    which is what keeps unit-gain outputs finite at the squeezing threshold.
    """

    label: str
    axis: Axis
    amplitude: complex
    first: complex
    second: complex


def port_term(weight: complex, amplitude: complex) -> complex:
    """weight*amplitude with an exact zero weight winning over any amplitude."""
    return 0j if weight == 0 else weight * amplitude


@dataclass(frozen=True)
class EprQuadratures:
    """The four quadrature expansions of one EPR pair."""

    x1: QuadExpansion
    p1: QuadExpansion
    x2: QuadExpansion
    p2: QuadExpansion


def _materialize(ports: tuple[EprPort, ...]) -> EprQuadratures:
    x1: dict = {}
    p1: dict = {}
    x2: dict = {}
    p2: dict = {}
    for port in ports:
        key = (port.label, port.axis)
        one, two = (x1, x2) if port.axis is Axis.X else (p1, p2)
        one[key] = one.get(key, 0j) + port_term(port.first, port.amplitude)
        two[key] = two.get(key, 0j) + port_term(port.second, port.amplitude)
    return EprQuadratures(
        QuadExpansion(0j, x1),
        QuadExpansion(0j, p1),
        QuadExpansion(0j, x2),
        QuadExpansion(0j, p2),
    )


class SqueezerSpectrum(abc.ABC):
    """A frequency-indexed squeezing source.

    Concrete sources provide the transfer pair at a dimensionless frequency
    and a port decomposition of the EPR pair built from them.  Instances are
    immutable; concurrent frequency queries are safe.
    """

    @abc.abstractmethod
    def pair(self, omega: float) -> TransferPair:
        """Transfer amplitudes at dimensionless frequency omega."""

    def epr_ports(
        self, omega: float, labels: tuple[str, str] = ("bar1", "bar2")
    ) -> tuple[EprPort, ...]:
        """Port decomposition of the EPR pair at omega.

        The default covers pure two-port squeezers: two decoupled squeezed
        modes superimposed with 1/sqrt(2) weights, the noisy amplitude on
        (mode1, X) and (mode2, P), the quiet one on the conjugate slots,
        and a sign flip on the second output.
        """
        s = self.pair(omega)
        h = _ROOT_HALF
        l1, l2 = labels
        return (
            EprPort(l1, Axis.X, s.s_plus, h, h),
            EprPort(l2, Axis.X, s.s_minus, h, -h),
            EprPort(l1, Axis.P, s.s_minus, h, h),
            EprPort(l2, Axis.P, s.s_plus, h, -h),
        )

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class LosslessNopa(SqueezerSpectrum):
    """Ideal-cavity NOPA, parameterized by the dimensionless pump epsilon.

    epsilon = 1 is the threshold limit; it is representable and reports an
    infinite noisy amplitude at omega = 0.
    """

    epsilon: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")

    @classmethod
    def from_rates(cls, params: NopaParams) -> "LosslessNopa":
        if params.rho != 0:
            raise ValueError("lossless source requires rho = 0")
        return cls(2 * params.kappa / params.gamma)

    def pair(self, omega: float) -> TransferPair:
        e = self.epsilon
        s_minus = complex(1 - e, omega) / complex(1 + e, -omega)
        den = complex(1 - e, -omega)
        if den == 0:
            s_plus = complex(math.inf, 0.0)
        else:
            s_plus = complex(1 + e, omega) / den
        return TransferPair(s_plus, s_minus)

    def describe(self) -> str:
        return f"nopa(epsilon={self.epsilon:g})"


@dataclass(frozen=True)
class LossyNopa(SqueezerSpectrum):
    """NOPA with intracavity loss, in dimensionless (epsilon, beta) form.

    beta is the cavity escape efficiency gamma/(gamma+rho).  The EPR ports
    are the coupled squeezer inputs themselves (labels b1, b2) plus the two
    loss-port vacua (c1, c2); the loss weights vanish identically at
    beta = 1.
    """

    epsilon: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("epsilon must lie in [0, 1) below threshold")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must lie in (0, 1]")

    @classmethod
    def from_rates(cls, params: NopaParams) -> "LossyNopa":
        t = params.total_rate
        return cls(2 * params.kappa / t, params.gamma / t)

    def transfer(self, omega: float) -> tuple[complex, complex, complex, complex]:
        """Main and loss-port amplitudes (G, g, G_loss, g_loss) at omega."""
        # Canonical scale gamma+rho = 2 makes the physical and dimensionless
        # frequencies coincide.
        params = NopaParams(self.epsilon, 2.0 * self.beta, 2.0 * (1.0 - self.beta))
        return nopa_transfer(params, omega)

    def pair(self, omega: float) -> TransferPair:
        big_g, small_g, _, _ = self.transfer(omega)
        return TransferPair(big_g + small_g, big_g - small_g)

    def epr_ports(
        self, omega: float, labels: tuple[str, str] = ("b1", "b2")
    ) -> tuple[EprPort, ...]:
        big_g, small_g, gl, gl2 = self.transfer(omega)
        l1, l2 = labels
        c1, c2 = l1 + "_loss", l2 + "_loss"
        return (
            EprPort(l1, Axis.X, 1.0, big_g, small_g),
            EprPort(l2, Axis.X, 1.0, small_g, big_g),
            EprPort(c1, Axis.X, 1.0, gl, gl2),
            EprPort(c2, Axis.X, 1.0, gl2, gl),
            EprPort(l1, Axis.P, 1.0, big_g, -small_g),
            EprPort(l2, Axis.P, 1.0, -small_g, big_g),
            EprPort(c1, Axis.P, 1.0, gl, -gl2),
            EprPort(c2, Axis.P, 1.0, -gl2, gl),
        )

    def describe(self) -> str:
        return f"nopa(epsilon={self.epsilon:g}, beta={self.beta:g})"


@dataclass(frozen=True)
class ZeroBandwidth(SqueezerSpectrum):
    """Frequency-flat squeezer with amplitudes (e^r, e^-r).

    r = inf models the ideal EPR limit.
    """

    r: float

    def __post_init__(self) -> None:
        if self.r < 0 or math.isnan(self.r):
            raise ValueError("squeezing parameter r must be nonnegative")

    def pair(self, omega: float) -> TransferPair:
        return TransferPair(math.exp(self.r), math.exp(-self.r))

    def describe(self) -> str:
        return f"zero-bandwidth(r={self.r:g})"


class CustomSpectrum(SqueezerSpectrum):
    """Squeezer defined by a tabulated transfer pair.

    Linear interpolation acts on Re and Im of each amplitude separately;
    queries outside the tabulated range are rejected.
    """

    def __init__(
        self,
        omegas: tuple[float, ...],
        s_plus: tuple[complex, ...],
        s_minus: tuple[complex, ...],
    ) -> None:
        if not (len(omegas) == len(s_plus) == len(s_minus)):
            raise ValueError("table columns must have equal length")
        if len(omegas) < 2:
            raise ValueError("table needs at least two rows")
        if any(b <= a for a, b in zip(omegas, omegas[1:])):
            raise ValueError("table frequencies must be strictly increasing")
        self._omegas = tuple(float(w) for w in omegas)
        self._s_plus = tuple(complex(v) for v in s_plus)
        self._s_minus = tuple(complex(v) for v in s_minus)

    CSV_HEADER = ("omega", "s_plus_re", "s_plus_im", "s_minus_re", "s_minus_im")

    @classmethod
    def from_csv(cls, path_or_text: str) -> "CustomSpectrum":
        """Load a table from a CSV file path or from CSV text."""
        if "\n" in path_or_text or "," in path_or_text:
            handle = io.StringIO(path_or_text)
        else:
            handle = open(path_or_text, newline="")
        with handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or tuple(h.strip() for h in header) != cls.CSV_HEADER:
                raise ValueError(
                    "custom spectrum CSV must use the header "
                    + ",".join(cls.CSV_HEADER)
                )
            omegas: list[float] = []
            s_plus: list[complex] = []
            s_minus: list[complex] = []
            for row in reader:
                if not row:
                    continue
                w, pr, pi, mr, mi = (float(v) for v in row)
                omegas.append(w)
                s_plus.append(complex(pr, pi))
                s_minus.append(complex(mr, mi))
        return cls(tuple(omegas), tuple(s_plus), tuple(s_minus))

    def pair(self, omega: float) -> TransferPair:
        grid = self._omegas
        if omega < grid[0] or omega > grid[-1]:
            raise ValueError(
                f"frequency {omega:g} outside tabulated range "
                f"[{grid[0]:g}, {grid[-1]:g}]"
            )
        hi = bisect.bisect_left(grid, omega)
        if hi < len(grid) and grid[hi] == omega:
            return TransferPair(self._s_plus[hi], self._s_minus[hi])
        lo = hi - 1
        t = (omega - grid[lo]) / (grid[hi] - grid[lo])

        def lerp(values: tuple[complex, ...]) -> complex:
            a, b = values[lo], values[hi]
            return complex(
                a.real + t * (b.real - a.real), a.imag + t * (b.imag - a.imag)
            )

        return TransferPair(lerp(self._s_plus), lerp(self._s_minus))

    def describe(self) -> str:
        return f"custom({len(self._omegas)} rows)"


def nopa_transfer(
    params: NopaParams, big_omega: float
) -> tuple[complex, complex, complex, complex]:
    """Input-output amplitudes of a parametric cavity at physical frequency.

    Returns (G, g, G_loss, g_loss): the main-port direct and conjugate
    amplitudes and their loss-port counterparts.  With rho = 0 the loss
    amplitudes vanish and (G, g) reduce to the ideal-cavity forms.
    """
    kappa, gamma, rho = params.kappa, params.gamma, params.rho
    d = complex((gamma + rho) / 2, -big_omega)
    den = d * d - kappa * kappa
    big_g = (kappa * kappa + (gamma - d) * d) / den
    small_g = kappa * gamma / den
    loss = math.sqrt(gamma * rho)
    return big_g, small_g, loss * d / den, kappa * loss / den


def s_pair(src: SqueezerSpectrum, omega: float) -> TransferPair:
    """Transfer pair of a source at dimensionless frequency omega."""
    return src.pair(omega)


def squeezing_spectrum(
    src_or_epsilon: "LosslessNopa | float", omega: float
) -> tuple[float, float]:
    """(|S_plus|^2, |S_minus|^2) closed forms for the lossless NOPA."""
    if isinstance(src_or_epsilon, LosslessNopa):
        epsilon = src_or_epsilon.epsilon
    else:
        epsilon = float(src_or_epsilon)
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
    noisy_den = (epsilon - 1.0) ** 2 + omega * omega
    quiet = 1.0 - 4.0 * epsilon / ((epsilon + 1.0) ** 2 + omega * omega)
    noisy = math.inf if noisy_den == 0 else 1.0 + 4.0 * epsilon / noisy_den
    return noisy, quiet


def make_epr_pair(src: SqueezerSpectrum, omega: float) -> EprQuadratures:
    """EPR pair of a source at omega, materialized as expansions."""
    return _materialize(src.epr_ports(omega))


def make_lossy_epr_pair(params: NopaParams, big_omega: float) -> EprQuadratures:
    """EPR pair of a lossy cavity, in physical units, loss ports included."""
    src = LossyNopa.from_rates(params)
    t = params.total_rate
    return _materialize(src.epr_ports(2 * big_omega / t))


def couple_modes(
    a: QuadExpansion, b: QuadExpansion
) -> tuple[QuadExpansion, QuadExpansion]:
    """Balanced beamsplitter on two mode expansions: ((a+b), (a-b))/sqrt(2).

    Self-inverse, which is what decouples an EPR pair back into its two
    independent squeezers.
    """
    h = _ROOT_HALF
    return combine(a, b, h, h), combine(a, b, h, -h)
