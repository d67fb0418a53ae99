"""Combinatorial minimal-prime systems: comaximality graphs and p-degree data.

Primes are coordinate-affine: a subset of the ambient variables pinned to
constants in F_p.  The residue field is then a rational function field in
the free variables, so height plus the log-p residue degree is the ambient
variable count on the nose, which is the invariant the graph machinery
propagates along connected components.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedOperationError


@dataclass(frozen=True)
class CoordinatePrime:
    """Variables pinned to constants; unpinned variables stay transcendental."""

    nvars: int
    p: int
    assignment: tuple  # sorted ((var_index, value), ...)

    def __post_init__(self):
        pins = tuple(sorted((int(i), int(v) % self.p) for i, v in self.assignment))
        seen = {i for i, _ in pins}
        if len(seen) != len(pins):
            raise UnsupportedOperationError("variable pinned twice")
        if any(i < 0 or i >= self.nvars for i in seen):
            raise UnsupportedOperationError("variable index out of range")
        object.__setattr__(self, "assignment", pins)

    @property
    def height(self) -> int:
        return len(self.assignment)

    @property
    def alpha(self) -> int:
        """log_p of the residue-field p-degree: one per free variable."""
        return self.nvars - self.height

    def pins(self) -> dict:
        return dict(self.assignment)

    def contains(self, other: "CoordinatePrime") -> bool:
        """self <= other as ideals: other's assignment extends self's."""
        mine, theirs = self.pins(), other.pins()
        return all(i in theirs and theirs[i] == v for i, v in mine.items())

    def describe(self) -> str:
        if not self.assignment:
            return "(generic)"
        return " ".join(f"x{i + 1}={v}" for i, v in self.assignment)


@dataclass(frozen=True)
class PrimeSystem:
    nvars: int
    p: int
    primes: tuple

    def __post_init__(self):
        if not self.primes:
            raise UnsupportedOperationError("prime system must be nonempty")
        if len({pr.assignment for pr in self.primes}) != len(self.primes):
            raise UnsupportedOperationError("duplicate primes in system")
        for pr in self.primes:
            if pr.nvars != self.nvars or pr.p != self.p:
                raise UnsupportedOperationError("ambient mismatch in system")


def comaximal(p1: CoordinatePrime, p2: CoordinatePrime) -> bool:
    """True when some variable is pinned to different constants (p1 + p2 = R)."""
    if p1.nvars != p2.nvars or p1.p != p2.p:
        raise UnsupportedOperationError("ambient mismatch")
    pins1 = p1.pins()
    for i, v in p2.assignment:
        if i in pins1 and pins1[i] != v:
            return True
    return False


@dataclass(frozen=True)
class SpectrumGraph:
    adjacency: tuple         # symmetric boolean matrix, no self loops
    components: tuple        # tuple of tuples of vertex indices
    connected: bool
    partition_certificate: tuple | None  # (A, B) with all cross pairs comaximal

    def as_dict(self) -> dict:
        return {
            "adjacency": [list(map(int, row)) for row in self.adjacency],
            "components": [list(c) for c in self.components],
            "connected": self.connected,
            "partition_certificate": (
                [list(self.partition_certificate[0]),
                 list(self.partition_certificate[1])]
                if self.partition_certificate else None),
        }


def graph_and_connectivity(system: PrimeSystem) -> SpectrumGraph:
    """Edges join non-comaximal primes; a disconnection yields a certified
    partition with every cross pair comaximal."""
    n = len(system.primes)
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            edge = not comaximal(system.primes[i], system.primes[j])
            adj[i][j] = adj[j][i] = edge
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if adj[v][w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        components.append(tuple(sorted(comp)))
    components.sort()
    connected = len(components) == 1
    certificate = None
    if not connected:
        a = components[0]
        b = tuple(sorted(i for c in components[1:] for i in c))
        for i in a:
            for j in b:
                if not comaximal(system.primes[i], system.primes[j]):
                    raise AssertionError("invalid disconnection certificate")
        certificate = (a, b)
    return SpectrumGraph(
        tuple(tuple(row) for row in adj), tuple(components),
        connected, certificate)


@dataclass(frozen=True)
class HeightAlphaCheck:
    constant_ok: bool       # alpha + height matches on both primes
    kunz_ok: bool           # p-degree divides off by p^(height gap)
    small_alpha: int
    small_height: int
    large_alpha: int
    large_height: int


def check_height_alpha(p_small: CoordinatePrime,
                       p_large: CoordinatePrime) -> HeightAlphaCheck:
    """For p <= q, verify alpha_p + ht(p) = alpha_q + ht(q) and the
    p-power relation between the residue-field degrees."""
    if not p_small.contains(p_large):
        raise UnsupportedOperationError("primes are not nested")
    constant_ok = (p_small.alpha + p_small.height
                   == p_large.alpha + p_large.height)
    p = p_small.p
    lhs = p ** p_small.alpha
    rhs = p ** p_large.alpha * p ** (p_large.height - p_small.height)
    return HeightAlphaCheck(constant_ok, lhs == rhs,
                            p_small.alpha, p_small.height,
                            p_large.alpha, p_large.height)


def beta_constant(system: PrimeSystem) -> int:
    """The common value alpha + height over a connected system (= nvars)."""
    graph = graph_and_connectivity(system)
    if not graph.connected:
        raise UnsupportedOperationError(
            "system is disconnected; evaluate beta per component")
    values = {pr.alpha + pr.height for pr in system.primes}
    if len(values) != 1:
        raise AssertionError("alpha + height not constant on a connected system")
    return values.pop()


def parse_prime_file(text: str) -> PrimeSystem:
    """Text format: first line 'n=<vars> p=<prime>'; then one prime per line
    as space/comma separated 'x<i>=<c>' pins, or '-' for the generic point."""
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise UnsupportedOperationError("empty prime file")
    header = dict(part.split("=") for part in lines[0].replace(",", " ").split())
    try:
        nvars, p = int(header["n"]), int(header["p"])
    except (KeyError, ValueError) as exc:
        raise UnsupportedOperationError(
            "prime file header must be 'n=<vars> p=<prime>'") from exc
    primes = []
    for ln in lines[1:]:
        if ln == "-":
            primes.append(CoordinatePrime(nvars, p, ()))
            continue
        pins = []
        for tok in ln.replace(",", " ").split():
            var, val = tok.split("=")
            if not var.startswith("x"):
                raise UnsupportedOperationError(f"bad variable token {tok!r}")
            pins.append((int(var[1:]) - 1, int(val)))
        primes.append(CoordinatePrime(nvars, p, tuple(pins)))
    return PrimeSystem(nvars, p, tuple(primes))
