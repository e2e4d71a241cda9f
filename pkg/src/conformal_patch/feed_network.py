"""Binary corporate feed: microstrip lines, T-junctions and quarter-wave transformers.

Line impedances come from the Hammerstad-Jensen quasi-static microstrip
equations (zero strip thickness, no dispersion, lossless). The input
reflection of a built tree is evaluated with ABCD cascades so that the
match degrades physically away from the design frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .constants import FREE_SPACE_IMPEDANCE, SPEED_OF_LIGHT
from .errors import DomainError, RangeError
from .synthesis import Substrate

# width/h range over which synthesis searches
MIN_WH = 0.05
MAX_WH = 100.0


def quarter_wave_impedance(z_in: float, z_load: float) -> float:
    """Impedance of a lambda/4 line that makes ``z_load`` look like ``z_in``."""
    if not (z_in > 0 and z_load > 0):
        raise DomainError(f"impedances must be positive, got {z_in}, {z_load}")
    return math.sqrt(z_in * z_load)


def _hammerstad(u: float, eps_r: float) -> tuple[float, float]:
    a = (
        1.0
        + math.log((u**4 + (u / 52.0) ** 2) / (u**4 + 0.432)) / 49.0
        + math.log(1.0 + (u / 18.1) ** 3) / 18.7
    )
    b = 0.564 * ((eps_r - 0.9) / (eps_r + 3.0)) ** 0.053
    eps_eff = (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * (1.0 + 10.0 / u) ** (-a * b)
    f_u = 6.0 + (2.0 * math.pi - 6.0) * math.exp(-((30.666 / u) ** 0.7528))
    z_air = FREE_SPACE_IMPEDANCE / (2.0 * math.pi) * math.log(f_u / u + math.sqrt(1.0 + 4.0 / u**2))
    return z_air / math.sqrt(eps_eff), eps_eff


def microstrip_analyze(width: float, substrate: Substrate) -> tuple[float, float]:
    """Characteristic impedance (ohms) and effective permittivity of a strip."""
    if not width > 0:
        raise DomainError(f"strip width must be positive, got {width}")
    return _hammerstad(width / substrate.h, substrate.eps_r)


def achievable_impedance(substrate: Substrate) -> tuple[float, float]:
    """(lowest, highest) impedance reachable within the supported width range."""
    return (
        _hammerstad(MAX_WH, substrate.eps_r)[0],
        _hammerstad(MIN_WH, substrate.eps_r)[0],
    )


def microstrip_synthesize(z0_target: float, substrate: Substrate) -> float:
    """Strip width in meters whose impedance is ``z0_target``."""
    z_min, z_max = achievable_impedance(substrate)
    if not z_min <= z0_target <= z_max:
        raise RangeError(
            f"{z0_target} ohm is outside the achievable range "
            f"[{z_min:.3f}, {z_max:.3f}] ohm (width/h in [{MIN_WH}, {MAX_WH}])"
        )
    er = substrate.eps_r

    def residual(log_u):
        return _hammerstad(math.exp(log_u), er)[0] - z0_target

    log_u = brentq(residual, math.log(MIN_WH), math.log(MAX_WH), xtol=1e-13, rtol=1e-14)
    return math.exp(log_u) * substrate.h


@dataclass(frozen=True)
class LineSegment:
    """Uniform microstrip section. Electrical length is at the design frequency."""

    z0: float
    width: float
    physical_length: float
    electrical_length: float
    eps_eff_line: float
    role: str = "line"

    def __post_init__(self) -> None:
        if not (self.z0 > 0 and self.width > 0 and self.physical_length > 0):
            raise DomainError("z0, width and length must be positive")

    def abcd(self, frequency: float, design_frequency: float) -> np.ndarray:
        beta_l = self.electrical_length * frequency / design_frequency
        c, s = math.cos(beta_l), math.sin(beta_l)
        return np.array([[c, 1j * self.z0 * s], [1j * s / self.z0, c]])


def make_segment(
    z0: float, physical_length: float, substrate: Substrate, frequency: float, role: str = "line"
) -> LineSegment:
    width = microstrip_synthesize(z0, substrate)
    z_actual, eps_eff = microstrip_analyze(width, substrate)
    beta = 2.0 * math.pi * frequency / SPEED_OF_LIGHT * math.sqrt(eps_eff)
    return LineSegment(z0, width, physical_length, beta * physical_length, eps_eff, role)


def guided_quarter_wave(z0: float, substrate: Substrate, frequency: float) -> float:
    width = microstrip_synthesize(z0, substrate)
    eps_eff = microstrip_analyze(width, substrate)[1]
    return SPEED_OF_LIGHT / (4.0 * frequency * math.sqrt(eps_eff))


@dataclass(frozen=True)
class FeedNode:
    """Either a leaf (element port) or a T-junction with two branches.

    ``load`` is the leaf's port impedance; ``math.inf`` means open circuit.
    """

    load: complex | None = None
    branches: tuple[FeedBranch, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.branches


@dataclass(frozen=True)
class FeedBranch:
    """Segments ordered from the parent junction toward ``child``."""

    segments: tuple[LineSegment, ...]
    child: FeedNode


@dataclass(frozen=True)
class FeedTree:
    """Corporate feed from one input port down to ``n`` element ports.

    ``root`` is the input branch; its segments start at the port.
    """

    port_impedance: float
    element_impedance: float
    frequency: float
    substrate: Substrate
    root: FeedBranch
    junction_loads: tuple[float, ...] = field(default=(), repr=False)

    def leaves(self) -> list[FeedNode]:
        return [node for node, _ in self.paths()]

    def paths(self) -> list[tuple[FeedNode, tuple[LineSegment, ...]]]:
        """Every element port with the segments on its path from the input."""
        out = []

        def walk(branch, acc):
            acc = acc + branch.segments
            if branch.child.is_leaf:
                out.append((branch.child, acc))
            for b in branch.child.branches:
                walk(b, acc)

        walk(self.root, ())
        return out

    def path_electrical_lengths(self) -> list[float]:
        return [math.fsum(s.electrical_length for s in segs) for _, segs in self.paths()]

    def segments(self) -> list[LineSegment]:
        out = []

        def walk(branch):
            out.extend(branch.segments)
            for b in branch.child.branches:
                walk(b)

        walk(self.root)
        return out

    @property
    def n_elements(self) -> int:
        return len(self.paths())


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def build_corporate_feed(
    n: int = 4,
    element_impedance: float = 50.0,
    port_impedance: float = 50.0,
    substrate: Substrate | None = None,
    spacing: float | None = None,
    frequency: float = 9e9,
) -> FeedTree:
    """Symmetric 1:n corporate feed matched to ``port_impedance`` at ``frequency``.

    Each leaf is reached by a line of the element impedance. At every
    junction the two branches combine in parallel and a quarter-wave
    transformer restores the port impedance; connecting lines between
    junction levels run at the port impedance. Horizontal runs follow the
    element ``spacing`` (default half a free-space wavelength).
    """
    if substrate is None:
        raise DomainError("substrate is required")
    if int(n) != n or not _is_power_of_two(int(n)):
        raise DomainError(f"element count must be a power of two, got {n}")
    if not (element_impedance > 0 and port_impedance > 0 and frequency > 0):
        raise DomainError("impedances and frequency must be positive")
    n = int(n)
    spacing = SPEED_OF_LIGHT / (2.0 * frequency) if spacing is None else spacing
    if not spacing > 0:
        raise DomainError("spacing must be positive")

    leaf = FeedNode(load=element_impedance)
    if n == 1:
        through = make_segment(
            element_impedance,
            2.0 * guided_quarter_wave(element_impedance, substrate, frequency),
            substrate,
            frequency,
            role="through",
        )
        return FeedTree(port_impedance, element_impedance, frequency, substrate, FeedBranch((through,), leaf))

    # branch from a first-level junction down to an element
    leaf_line = make_segment(element_impedance, spacing / 2.0, substrate, frequency, role="element")
    child_branch = FeedBranch((leaf_line,), leaf)
    presented = element_impedance
    loads = []
    levels = int(math.log2(n))
    for level in range(1, levels + 1):
        combined = presented / 2.0
        loads.append(combined)
        junction = FeedNode(branches=(child_branch, child_branch))
        z_t = quarter_wave_impedance(port_impedance, combined)
        transformer = make_segment(
            z_t, guided_quarter_wave(z_t, substrate, frequency), substrate, frequency, role="quarter_wave"
        )
        if level == levels:
            root = FeedBranch((transformer,), junction)
            return FeedTree(
                port_impedance, element_impedance, frequency, substrate, root, tuple(loads)
            )
        # half the distance between sibling junctions one level up
        run = spacing * 2 ** (level - 1)
        connector = make_segment(port_impedance, run, substrate, frequency)
        child_branch = FeedBranch((connector, transformer), junction)
        presented = port_impedance
    raise AssertionError("unreachable")


def with_leaf_loads(tree: FeedTree, load: complex) -> FeedTree:
    """Copy of ``tree`` with every element port terminated in ``load``."""

    def rebuild(branch):
        child = branch.child
        if child.is_leaf:
            return replace(branch, child=FeedNode(load=load))
        return replace(branch, child=FeedNode(branches=tuple(rebuild(b) for b in child.branches)))

    return replace(tree, root=rebuild(tree.root))


def _terminal_state(load) -> np.ndarray:
    # (V, I) at a termination, scaled so an open circuit is finite
    if load is None or (isinstance(load, float) and math.isinf(load)):
        return np.array([1.0 + 0j, 0.0 + 0j])
    return np.array([complex(load), 1.0 + 0j])


def _cascade(segments, frequency, design_frequency) -> np.ndarray:
    m = np.eye(2, dtype=np.complex128)
    for seg in segments:
        m = m @ seg.abcd(frequency, design_frequency)
    return m


def branch_input_admittance(branch: FeedBranch, frequency: float, design_frequency: float) -> complex:
    """Admittance looking from the parent end of ``branch`` toward the elements."""
    child = branch.child
    if child.is_leaf:
        v, i = _terminal_state(child.load)
    else:
        y = sum(branch_input_admittance(b, frequency, design_frequency) for b in child.branches)
        v, i = 1.0 + 0j, complex(y)
    v_in, i_in = _cascade(branch.segments, frequency, design_frequency) @ np.array([v, i])
    return complex(i_in / v_in)


def feed_input_impedance(tree: FeedTree, frequency: float | None = None) -> complex:
    f = tree.frequency if frequency is None else frequency
    y = branch_input_admittance(tree.root, f, tree.frequency)
    return complex(1.0 / y) if y != 0 else complex(math.inf)


def feed_input_reflection(tree: FeedTree, frequency: float | None = None) -> complex:
    """Reflection coefficient at the input port, referenced to the port impedance."""
    f = tree.frequency if frequency is None else frequency
    zy = tree.port_impedance * branch_input_admittance(tree.root, f, tree.frequency)
    return complex((1.0 - zy) / (1.0 + zy))


@dataclass(frozen=True)
class JunctionCheck:
    """Parallel combination at one T-junction versus its design load."""

    expected: float
    actual: complex

    @property
    def relative_error(self) -> float:
        return abs(self.actual - self.expected) / self.expected


def junction_checks(tree: FeedTree) -> list[JunctionCheck]:
    """Check every T-junction at the design frequency, root level last."""
    f = tree.frequency
    out: list[JunctionCheck] = []
    by_level: dict[int, FeedNode] = {}

    def walk(node, depth):
        if node.is_leaf:
            return
        by_level.setdefault(depth, node)
        for b in node.branches:
            walk(b.child, depth + 1)

    walk(tree.root.child, 0)
    # tree is symmetric, so one junction per level represents the level
    for depth in sorted(by_level, reverse=True):
        node = by_level[depth]
        y = sum(branch_input_admittance(b, f, f) for b in node.branches)
        expected = tree.junction_loads[len(by_level) - 1 - depth]
        out.append(JunctionCheck(expected, complex(1.0 / y)))
    return out
