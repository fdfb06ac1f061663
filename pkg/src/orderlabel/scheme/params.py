from __future__ import annotations

import math
from dataclasses import dataclass

PROFILES = ("tradeoff", "fast")
_EPS = 1e-9


def _ceil(x: float) -> int:
    # guards perfect powers such as 27 ** (2/3) == 8.999999999999998
    r = round(x)
    return int(r) if abs(x - r) < _EPS else math.ceil(x)


def _floor(x: float) -> int:
    r = round(x)
    return int(r) if abs(x - r) < _EPS else math.floor(x)


@dataclass(frozen=True)
class SchemeParams:
    """Knobs of the comparability scheme for one vertex count ``n``.

    gamma sets the heavy-pair threshold (a pair is heavy when it covers at
    least ``ceil(gamma*n)`` vertices), delta the hub threshold, ``ell`` the
    degree cap of the non-hub split, ``s`` and ``t`` the greedy budgets.
    """

    profile: str
    n: int
    s: int
    gamma: float
    delta: float
    ell: int
    t: int

    @property
    def heavy_threshold(self) -> int:
        return max(1, _ceil(self.gamma * self.n))

    @property
    def hub_threshold(self) -> float:
        return self.delta * self.n

    @property
    def light_cap(self) -> int:
        """Degree bound inside the light neighbourhood subgraphs."""
        return _floor(self.gamma * self.n)

    @property
    def g1_cap(self) -> int:
        return _floor(2 * self.gamma * self.n)

    @property
    def default_backend(self) -> str:
        return "sorted" if self.profile == "tradeoff" else "compressed"

    def tradeoff_bound(self) -> float:
        """n/4 + 1000 s^(-1/3) n log^2 n + 2s."""
        n = self.n
        return n / 4 + 1000 * self.s ** (-1 / 3) * n * math.log2(n) ** 2 + 2 * self.s

    def inspection_bound(self) -> float:
        """2s + 1000 log^2 n."""
        return 2 * self.s + 1000 * math.log2(self.n) ** 2


def derive_params(n: int, s: int | None = None, profile: str = "tradeoff") -> SchemeParams:
    """Parameters from the formulas of the two profiles.

    tradeoff: gamma = 3 ln n / s, delta = s^(-1/3) ln n,
    ell = floor(s^(-1/3) n ln n), t = ceil(s^(2/3)).
    fast: delta = log^(-1/4) n, gamma = log^(-3/4) n,
    s = ceil(-2 ln(gamma) / gamma), t = ceil(-ln(delta) / delta^2).

    For n < 2 the formulas degenerate (ln 1 = 0) and are evaluated at n = 2.
    """
    m = max(n, 2)
    if profile == "tradeoff":
        if s is None or s < 1:
            raise ValueError("tradeoff profile needs s >= 1")
        ln = math.log(m)
        gamma = 3 * ln / s
        delta = s ** (-1 / 3) * ln
        ell = _floor(s ** (-1 / 3) * m * ln)
        t = _ceil(s ** (2 / 3))
        return SchemeParams(profile, n, int(s), gamma, delta, ell, t)
    if profile == "fast":
        lg = math.log2(m)
        delta = lg ** (-1 / 4)
        gamma = lg ** (-3 / 4)
        s_fast = max(0, _ceil(-2 * math.log(gamma) / gamma))
        t = max(0, _ceil(-math.log(delta) / delta ** 2))
        ell = _floor(delta * m)
        return SchemeParams(profile, n, s_fast, gamma, delta, ell, t)
    raise ValueError("unknown profile {!r}".format(profile))


def default_s(n: int) -> int:
    """s with s^(1/3) = n^(1/4), i.e. ceil(n^(3/4))."""
    return max(1, _ceil(max(n, 1) ** 0.75))
