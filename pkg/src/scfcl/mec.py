"""
Magnetic equivalent circuit.

The network is solved for nodal magnetic scalar potentials u (ampere-turns) with one reference node at
zero potential. For a branch b oriented from node p to node q the driving MMF is

    d_b = u_p - u_q + sum(sign * N * i over windings on b) + F_pm,b

and the branch flux follows from the branch law Phi_b = G_b(d_b). For a lumped core branch this is
Phi = A * B(d / l), i.e. the exact material law at uniform field; gaps and PM branches are linear.
Flux conservation at each non-reference node closes the system, which is solved by damped Newton
iteration with the differential permeance dPhi/dd as Jacobian.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from collections.abc import Mapping, Sequence
from logging import getLogger
from typing import Literal

import numpy as np
import numpy.typing as npt

from .material import BHCurve, h_of_b, mu_0, mu_differential

_logger = getLogger(__name__)

BranchKind = Literal["core", "gap", "pm"]
WindingRole = Literal["ac-series", "dc-source", "dc-auxiliary", "shorted"]

WINDING_ROLES: tuple[str, ...] = ("ac-series", "dc-source", "dc-auxiliary", "shorted")


class NonConvergence(RuntimeError):
    """Newton iteration failed; ``residual_history`` holds the merit value per iteration."""

    def __init__(self, message: str, residual_history: Sequence[float] = ()) -> None:
        super().__init__(message)
        self.residual_history = list(residual_history)


class SingularJacobian(RuntimeError):
    pass


@dataclasses.dataclass(frozen=True)
class Branch:
    """
    One reluctance element. Use the :meth:`core`, :meth:`gap` and :meth:`pm` constructors.

    A gap branch may carry a series iron part of length ``iron_length`` at constant relative permeability
    ``iron_mu_r``; its reluctance is then (l_iron + mu_r * l_g) / (mu0 * mu_r * A), the usual leg-with-gap
    expression. ``fringing`` scales the effective gap area (1.0 means no fringing correction).
    """

    id: str
    from_node: str
    to_node: str
    kind: BranchKind
    length: float = 0.0
    area: float = 1.0
    material: BHCurve | None = None
    iron_length: float = 0.0
    iron_mu_r: float = 1.0
    fringing: float = 1.0
    mmf: float = 0.0
    internal_reluctance: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("core", "gap", "pm"):
            raise ValueError(f"branch {self.id}: kind invalid: {self.kind!r}")
        if not (self.area > 0 and math.isfinite(self.area)):
            raise ValueError(f"branch {self.id}: area must be positive, got {self.area}")
        if self.kind in ("core", "gap") and not (self.length > 0 and math.isfinite(self.length)):
            raise ValueError(f"branch {self.id}: length must be positive, got {self.length}")
        if self.kind == "core" and self.material is None:
            raise ValueError(f"branch {self.id}: core branch needs a material")
        if self.kind == "gap":
            if self.iron_length < 0 or self.iron_mu_r < 1 or not self.fringing > 0:
                raise ValueError(f"branch {self.id}: invalid gap parameters")
        if self.kind == "pm" and not (self.internal_reluctance > 0 and math.isfinite(self.internal_reluctance)):
            raise ValueError(f"branch {self.id}: PM internal reluctance must be positive")

    @staticmethod
    def core(id: str, from_node: str, to_node: str, length: float, area: float, material: BHCurve) -> Branch:
        return Branch(id, from_node, to_node, "core", length=length, area=area, material=material)

    @staticmethod
    def gap(
        id: str,
        from_node: str,
        to_node: str,
        length: float,
        area: float,
        iron_length: float = 0.0,
        iron_mu_r: float = 1.0,
        fringing: float = 1.0,
    ) -> Branch:
        return Branch(
            id, from_node, to_node, "gap", length=length, area=area,
            iron_length=iron_length, iron_mu_r=iron_mu_r, fringing=fringing,
        )

    @staticmethod
    def pm(id: str, from_node: str, to_node: str, mmf: float, internal_reluctance: float, area: float = 1.0) -> Branch:
        return Branch(id, from_node, to_node, "pm", area=area, mmf=mmf, internal_reluctance=internal_reluctance)

    @property
    def linear_reluctance(self) -> float:
        """Reluctance of gap and PM branches; undefined for core branches."""
        if self.kind == "gap":
            r = self.length / (mu_0 * self.area * self.fringing)
            if self.iron_length > 0:
                r += self.iron_length / (mu_0 * self.iron_mu_r * self.area)
            return r
        if self.kind == "pm":
            return self.internal_reluctance
        raise TypeError(f"branch {self.id} is a core branch")


@dataclasses.dataclass(frozen=True)
class WindingLink:
    id: str
    branch: str
    turns: int
    sign: int = 1
    role: WindingRole = "ac-series"

    def __post_init__(self) -> None:
        if int(self.turns) != self.turns or self.turns < 1:
            raise ValueError(f"winding {self.id}: turns must be a positive integer, got {self.turns}")
        if self.sign not in (1, -1):
            raise ValueError(f"winding {self.id}: sign must be +1 or -1, got {self.sign}")
        if self.role not in WINDING_ROLES:
            raise ValueError(f"winding {self.id}: role invalid: {self.role!r}")


class _FluxLaw:
    """Vectorized Phi(d) and dPhi/dd over a list of branches."""

    def __init__(self, branches: Sequence[Branch]) -> None:
        n = len(branches)
        self.permeance = np.zeros(n)
        sat = []
        for k, b in enumerate(branches):
            if b.kind == "core":
                assert b.material is not None
                if b.material.kind == "linear":
                    self.permeance[k] = mu_0 * b.material.mu_r * b.area / b.length
                else:
                    sat.append(k)
            else:
                self.permeance[k] = 1.0 / b.linear_reluctance
        self.sat = np.array(sat, dtype=int)
        self.sat_length = np.array([branches[k].length for k in sat])
        self.sat_area = np.array([branches[k].area for k in sat])
        self.sat_c = np.array([2.0 * branches[k].material.B_sat / math.pi for k in sat])  # type: ignore[union-attr]
        self.sat_knee = np.array([branches[k].material.H_knee for k in sat])  # type: ignore[union-attr]

    def __call__(self, d: npt.NDArray[np.float64]) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        phi = self.permeance * d
        dphi = self.permeance.copy()
        if self.sat.size:
            x = d[self.sat] / self.sat_length / self.sat_knee
            a_over_l = self.sat_area / self.sat_length
            phi[self.sat] = self.sat_area * (mu_0 * x * self.sat_knee + self.sat_c * np.arctan(x))
            dphi[self.sat] = a_over_l * (mu_0 + self.sat_c / self.sat_knee / (1.0 + x * x))
        return phi, dphi


@dataclasses.dataclass(frozen=True)
class _Compiled:
    free_nodes: tuple[str, ...]
    incidence: npt.NDArray[np.float64]  # free nodes x branches, +1 at from-node, -1 at to-node
    turns: npt.NDArray[np.float64]  # branches x windings, sign * N
    pm_mmf: npt.NDArray[np.float64]
    law: _FluxLaw
    branch_index: Mapping[str, int]
    winding_index: Mapping[str, int]


@dataclasses.dataclass(frozen=True)
class MagneticNetwork:
    """Immutable reluctance network with winding links. ``reference`` defaults to the first node."""

    nodes: tuple[str, ...]
    branches: tuple[Branch, ...]
    windings: tuple[WindingLink, ...] = ()
    reference: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "branches", tuple(self.branches))
        object.__setattr__(self, "windings", tuple(self.windings))
        if not self.branches:
            raise ValueError("a magnetic network needs at least one branch")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node ids")
        if self.reference is None:
            object.__setattr__(self, "reference", self.nodes[0] if self.nodes else None)
        if self.reference not in self.nodes:
            raise ValueError(f"reference node {self.reference!r} is not declared")
        ids = [b.id for b in self.branches]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate branch ids")
        node_set = set(self.nodes)
        for b in self.branches:
            for n in (b.from_node, b.to_node):
                if n not in node_set:
                    raise ValueError(f"branch {b.id} references undeclared node {n!r}")
        wids = [w.id for w in self.windings]
        if len(set(wids)) != len(wids):
            raise ValueError("duplicate winding ids")
        for w in self.windings:
            if w.branch not in ids:
                raise ValueError(f"winding {w.id} references unknown branch {w.branch!r}")
        # Connectivity by union-find.
        parent = {n: n for n in self.nodes}

        def find(n: str) -> str:
            while parent[n] != n:
                parent[n] = parent[parent[n]]
                n = parent[n]
            return n

        for b in self.branches:
            parent[find(b.from_node)] = find(b.to_node)
        if len({find(n) for n in self.nodes}) != 1:
            raise ValueError("magnetic network is not connected")

    def branch(self, branch_id: str) -> Branch:
        return self.branches[self.compiled.branch_index[branch_id]]

    def winding(self, winding_id: str) -> WindingLink:
        try:
            return self.windings[self.compiled.winding_index[winding_id]]
        except KeyError:
            raise KeyError(f"unknown winding id {winding_id!r}") from None

    @functools.cached_property
    def compiled(self) -> _Compiled:
        free = tuple(n for n in self.nodes if n != self.reference)
        node_pos = {n: k for k, n in enumerate(free)}
        inc = np.zeros((len(free), len(self.branches)))
        for k, b in enumerate(self.branches):
            if b.from_node == b.to_node:
                continue
            if b.from_node in node_pos:
                inc[node_pos[b.from_node], k] += 1.0
            if b.to_node in node_pos:
                inc[node_pos[b.to_node], k] -= 1.0
        bidx = {b.id: k for k, b in enumerate(self.branches)}
        turns = np.zeros((len(self.branches), len(self.windings)))
        for j, w in enumerate(self.windings):
            turns[bidx[w.branch], j] += w.sign * w.turns
        pm = np.array([b.mmf if b.kind == "pm" else 0.0 for b in self.branches])
        return _Compiled(
            free_nodes=free,
            incidence=inc,
            turns=turns,
            pm_mmf=pm,
            law=_FluxLaw(self.branches),
            branch_index=bidx,
            winding_index={w.id: j for j, w in enumerate(self.windings)},
        )


@dataclasses.dataclass(frozen=True)
class MecSolution:
    potentials: npt.NDArray[np.float64]
    """Potentials of the non-reference nodes, in ``network.compiled.free_nodes`` order [A-t]."""
    flux: npt.NDArray[np.float64]
    """Branch fluxes in the reference direction [Wb]."""
    B: npt.NDArray[np.float64]
    H: npt.NDArray[np.float64]
    iterations: int
    residual: float
    """Largest nodal flux imbalance divided by the largest branch flux magnitude."""
    residual_history: tuple[float, ...] = ()


def branch_reluctance(branch: Branch, B: float = 0.0) -> float:
    """
    Secant reluctance l / (mu * A) [A-t/Wb]; ``B`` only matters for core branches.
    At B = 0 the differential permeability at the origin is used.
    """
    if branch.kind != "core":
        return branch.linear_reluctance
    assert branch.material is not None
    if not math.isfinite(B):
        raise ValueError(f"B must be finite, got {B}")
    if B == 0.0:
        mu = float(mu_differential(branch.material, 0.0))
    else:
        mu = B / float(h_of_b(branch.material, B))
    return branch.length / (mu * branch.area)


def _field_quantities(branches: Sequence[Branch], d: npt.NDArray[np.float64], flux: npt.NDArray[np.float64]):
    area = np.array([b.area for b in branches])
    B = flux / area
    H = np.empty_like(flux)
    for k, b in enumerate(branches):
        if b.kind == "core":
            H[k] = d[k] / b.length
        elif b.kind == "gap":
            H[k] = flux[k] / (mu_0 * b.area * b.fringing)
        else:
            H[k] = B[k] / mu_0
    return B, H


def _normalized_residual(r: npt.NDArray[np.float64], flux: npt.NDArray[np.float64]) -> float:
    if r.size == 0:
        return 0.0
    scale = float(np.max(np.abs(flux))) if flux.size else 0.0
    res = float(np.max(np.abs(r)))
    if res == 0.0:
        return 0.0
    return res / max(scale, 1e-300)


def winding_current_vector(network: MagneticNetwork, currents: Mapping[str, float] | Sequence[float]) -> npt.NDArray[np.float64]:
    if isinstance(currents, Mapping):
        unknown = set(currents) - {w.id for w in network.windings}
        if unknown:
            raise KeyError(f"unknown winding ids: {sorted(unknown)}")
        return np.array([float(currents.get(w.id, 0.0)) for w in network.windings])
    arr = np.asarray(currents, dtype=float).reshape(-1)
    if arr.size != len(network.windings):
        raise ValueError(f"expected {len(network.windings)} winding currents, got {arr.size}")
    return arr


def solve(
    network: MagneticNetwork,
    currents: Mapping[str, float] | Sequence[float] | None = None,
    initial: MecSolution | None = None,
    *,
    tol: float = 1e-9,
    max_iter: int = 50,
    max_halvings: int = 30,
) -> MecSolution:
    """
    Flux distribution for the given winding currents (mapping by winding id, or one value per winding
    in declaration order; missing ids default to zero).

    Convergence requires both the potential-scaled residual to drop below ``tol * max(total MMF, 1 A-t)``
    and the nodal flux imbalance to drop below ``tol * max|Phi|``.
    """
    cp = network.compiled
    i_w = winding_current_vector(network, {} if currents is None else currents)
    if not np.all(np.isfinite(i_w)):
        raise ValueError("winding currents must be finite")
    F = cp.turns @ i_w + cp.pm_mmf
    A = cp.incidence
    mmf_scale = max(float(np.sum(np.abs(F))), 1.0)
    u = np.zeros(len(cp.free_nodes)) if initial is None else np.array(initial.potentials, dtype=float)

    def evaluate(u: npt.NDArray[np.float64]):
        d = A.T @ u + F
        phi, g = cp.law(d)
        return d, phi, g, A @ phi

    d, phi, g, r = evaluate(u)
    history: list[float] = []
    iterations = 0
    while True:
        rel = _normalized_residual(r, phi)
        history.append(rel)
        if u.size == 0:
            break
        J = (A * g) @ A.T
        diag = np.diag(J)
        mmf_res = float(np.max(np.abs(r) / diag))
        if mmf_res <= tol * mmf_scale and rel <= tol:
            break
        if iterations >= max_iter:
            raise NonConvergence(
                f"magnetic Newton did not converge in {max_iter} iterations (residual {rel:.3e})", history
            )
        try:
            du = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            k = int(np.argmin(g))
            raise SingularJacobian(f"singular magnetic Jacobian; degenerate branch {network.branches[k].id!r}") from None
        merit = float(np.linalg.norm(r))
        step = 1.0
        for _ in range(max_halvings + 1):
            trial = evaluate(u + step * du)
            if float(np.linalg.norm(trial[3])) < merit or merit == 0.0:
                break
            step *= 0.5
        else:
            raise NonConvergence("magnetic Newton damping exhausted", history)
        u = u + step * du
        d, phi, g, r = trial
        iterations += 1
    B, H = _field_quantities(network.branches, d, phi)
    return MecSolution(
        potentials=u, flux=phi, B=B, H=H, iterations=iterations,
        residual=history[-1], residual_history=tuple(history),
    )


def flux_linkage(network: MagneticNetwork, solution: MecSolution, winding_id: str) -> float:
    """lambda = sign * N * Phi of the winding's branch [Wb-t]."""
    w = network.winding(winding_id)
    return w.sign * w.turns * float(solution.flux[network.compiled.branch_index[w.branch]])


def flux_linkages(network: MagneticNetwork, solution: MecSolution) -> npt.NDArray[np.float64]:
    return network.compiled.turns.T @ solution.flux


def _jacobian_inductance(network: MagneticNetwork, solution: MecSolution, i_w) -> npt.NDArray[np.float64]:
    cp = network.compiled
    A, S = cp.incidence, cp.turns
    d = A.T @ solution.potentials + S @ i_w + cp.pm_mmf
    _, g = cp.law(d)
    GS = g[:, None] * S
    L = S.T @ GS
    if A.shape[0]:
        J = (A * g) @ A.T
        AGS = A @ GS
        L = L - AGS.T @ np.linalg.solve(J, AGS)
    return 0.5 * (L + L.T)


def incremental_inductance(
    network: MagneticNetwork,
    currents: Mapping[str, float] | Sequence[float] | None = None,
    *,
    method: Literal["jacobian", "fd"] = "jacobian",
) -> npt.NDArray[np.float64]:
    """
    Matrix L[j, k] = d(lambda_j)/d(i_k) [H] over the network's windings (declaration order).

    The default condenses the Newton Jacobian onto the winding currents (Schur complement). ``method="fd"``
    uses central differences with step max(1e-6 |i|, 1e-3 A).
    """
    i_w = winding_current_vector(network, {} if currents is None else currents)
    sol = solve(network, i_w)
    if method == "jacobian":
        return _jacobian_inductance(network, sol, i_w)
    n = len(network.windings)
    L = np.zeros((n, n))
    for k in range(n):
        h = max(1e-6 * abs(i_w[k]), 1e-3)
        ip, im = i_w.copy(), i_w.copy()
        ip[k] += h
        im[k] -= h
        lp = flux_linkages(network, solve(network, ip, sol))
        lm = flux_linkages(network, solve(network, im, sol))
        L[:, k] = (lp - lm) / (2 * h)
    return L
