# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
from dataclasses import dataclass

import numpy as np
from loguru import logger

from slsac.errors import RejectedInputError
from slsac.runtypes import CheckReport

CONTRACTION_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DiscreteDist:
    atoms: np.ndarray
    probs: np.ndarray


@dataclass(frozen=True)
class TabularCmdp:
    """Finite CMDP under a fixed policy.

    transition: [S, A, S]; policy: [S, A]; cost_atoms / cost_probs: [S, A, K].
    """

    transition: np.ndarray
    policy: np.ndarray
    cost_atoms: np.ndarray
    cost_probs: np.ndarray

    @property
    def n_states(self) -> int:
        return self.transition.shape[0]

    @property
    def n_actions(self) -> int:
        return self.transition.shape[1]

    @classmethod
    def random(
        cls, rng: np.random.Generator, states: int, actions: int = 2, cost_atoms: int = 3
    ) -> "TabularCmdp":
        return cls(
            transition=rng.dirichlet(np.ones(states), size=(states, actions)),
            policy=rng.dirichlet(np.ones(actions), size=states),
            cost_atoms=rng.integers(0, 3, size=(states, actions, cost_atoms)).astype(np.float64),
            cost_probs=rng.dirichlet(np.ones(cost_atoms), size=(states, actions)),
        )


def random_distributions(
    rng: np.random.Generator, mdp: TabularCmdp, atoms: int = 4
) -> list[list[DiscreteDist]]:
    return [
        [
            DiscreteDist(rng.uniform(0.0, 20.0, size=atoms), rng.dirichlet(np.ones(atoms)))
            for _ in range(mdp.n_actions)
        ]
        for _ in range(mdp.n_states)
    ]


def bellman_apply(
    mdp: TabularCmdp, dists: list[list[DiscreteDist]], gamma: float
) -> list[list[DiscreteDist]]:
    """Distributional Bellman operator by exact enumeration: law of c + gamma * Z(S', A')."""
    out = []
    for s in range(mdp.n_states):
        row = []
        for a in range(mdp.n_actions):
            atoms, probs = [], []
            for c, pc in zip(mdp.cost_atoms[s, a], mdp.cost_probs[s, a]):
                for s2 in range(mdp.n_states):
                    for a2 in range(mdp.n_actions):
                        weight = pc * mdp.transition[s, a, s2] * mdp.policy[s2, a2]
                        nxt = dists[s2][a2]
                        atoms.append(c + gamma * nxt.atoms)
                        probs.append(weight * nxt.probs)
            row.append(DiscreteDist(np.concatenate(atoms), np.concatenate(probs)))
        out.append(row)
    return out


def wasserstein_1(p: DiscreteDist, q: DiscreteDist) -> float:
    """W1 between finite laws as the integral of |F_p - F_q| over the merged support."""
    support = np.concatenate([p.atoms, q.atoms])
    order = np.argsort(support, kind="stable")
    support = support[order]
    mass = np.concatenate([p.probs, -q.probs])[order]
    cdf_gap = np.cumsum(mass)[:-1]
    return float(np.sum(np.abs(cdf_gap) * np.diff(support)))


def sup_w1(z1: list[list[DiscreteDist]], z2: list[list[DiscreteDist]]) -> float:
    return max(wasserstein_1(p, q) for row1, row2 in zip(z1, z2) for p, q in zip(row1, row2))


def contraction_check(
    states: int, gamma: float, rng: np.random.Generator, instances: int = 100
) -> CheckReport:
    """sup W1(TZ1, TZ2) <= gamma * sup W1(Z1, Z2) on random tabular instances."""
    if not 1 <= states <= 10:
        raise RejectedInputError(f"contraction check supports 1..10 states, got {states}")
    if not 0.0 <= gamma < 1.0:
        raise RejectedInputError(f"gamma must be in [0, 1), got {gamma}")
    worst = np.inf
    worst_ratio = 0.0
    violations = 0
    for _ in range(instances):
        mdp = TabularCmdp.random(rng, states)
        z1 = random_distributions(rng, mdp)
        z2 = random_distributions(rng, mdp)
        before = sup_w1(z1, z2)
        after = sup_w1(bellman_apply(mdp, z1, gamma), bellman_apply(mdp, z2, gamma))
        slack = gamma * before + CONTRACTION_TOLERANCE - after
        worst = min(worst, slack)
        if before > 0:
            worst_ratio = max(worst_ratio, after / before)
        if slack < 0:
            violations += 1
    logger.debug(f"[verify][contraction] worst ratio {worst_ratio:.6f} for gamma {gamma}")
    return CheckReport(
        name="contraction",
        passed=violations == 0,
        trials=instances,
        violations=violations,
        worst_slack=float(worst),
        details={"worst_ratio": worst_ratio, "gamma": gamma},
    )
