# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np

from slsac.errors import RejectedInputError, RejectedStepError
from slsac.nn import GradSet, ParamSet

from ._state import ClipMode, LangevinVariant, OptimizerState


def _checked_grads(params: ParamSet, grads: GradSet) -> tuple[list[np.ndarray], list[np.ndarray]]:
    p_list = params.tensors()
    g_list = grads.tensors()
    if len(p_list) != len(g_list) or any(p.shape != g.shape for p, g in zip(p_list, g_list)):
        raise RejectedInputError("gradient shapes do not match the parameters")
    for i, g in enumerate(g_list):
        if not np.all(np.isfinite(g)):
            raise RejectedStepError(f"non-finite entries in gradient tensor {i}")
    return p_list, g_list


def clip_combined(drift: np.ndarray, clip_c: float) -> np.ndarray:
    """Clamp every entry of the drift to [-clip_c, clip_c]."""
    if not clip_c > 0:
        raise RejectedInputError(f"clip_c must be > 0, got {clip_c}")
    return np.clip(drift, -clip_c, clip_c)


def clip_global_norm(drifts: list[np.ndarray], clip_c: float) -> list[np.ndarray]:
    """Rescale all drift tensors together so their joint L2 norm is at most clip_c."""
    if not clip_c > 0:
        raise RejectedInputError(f"clip_c must be > 0, got {clip_c}")
    norm = float(np.sqrt(sum(float(np.sum(d * d)) for d in drifts)))
    if norm <= clip_c:
        return drifts
    scale = clip_c / norm
    return [d * scale for d in drifts]


def adamw_step(params: ParamSet, grads: GradSet, state: OptimizerState) -> None:
    """Bias-corrected Adam with decoupled weight decay, applied in place."""
    p_list, g_list = _checked_grads(params, grads)
    state.ensure_moments(params)
    state.step_count += 1
    t = state.step_count
    bc1 = 1.0 - state.beta1**t
    bc2 = 1.0 - state.beta2**t
    for p, g, m, v in zip(p_list, g_list, state.m, state.v):
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * g * g
        m_hat = m / bc1
        v_hat = v / bc2
        update = state.lr * (m_hat / (np.sqrt(v_hat) + state.eps))
        if state.weight_decay:
            update = update + state.lr * state.weight_decay * p
        p -= update
    params.mark_updated()


def langevin_step(
    params: ParamSet,
    grads: GradSet,
    state: OptimizerState,
    variant: LangevinVariant | str,
    rng: np.random.Generator,
) -> None:
    """One Langevin update in place.

    With zeta = sqrt(v + eps) and xi ~ N(0, I):

    - vanilla_sgld: p -= lr * g, isotropic noise
    - psgld: p -= lr * g / zeta, isotropic noise
    - full_asgld: p -= lr * m / zeta, noise scaled by zeta ** -0.5
    - slsac_asgld: p -= lr * clip(g + a * m / zeta), isotropic noise

    Isotropic noise is sqrt(2 * lr * t_inv) * xi; it is skipped when t_inv == 0. The
    adaptive variants update their moments (without bias correction) before the drift.
    """
    try:
        variant = LangevinVariant(variant)
    except ValueError as err:
        raise RejectedInputError(f"unknown Langevin variant {variant!r}") from err
    p_list, g_list = _checked_grads(params, grads)
    state.ensure_moments(params)

    if state.weight_decay:
        g_list = [g + state.weight_decay * p for p, g in zip(p_list, g_list)]

    adaptive = variant is not LangevinVariant.VANILLA_SGLD
    zetas: list[np.ndarray] = []
    if adaptive:
        for g, m, v in zip(g_list, state.m, state.v):
            m *= state.beta1
            m += (1.0 - state.beta1) * g
            v *= state.beta2
            v += (1.0 - state.beta2) * g * g
            zetas.append(np.sqrt(v + state.eps))

    if variant is LangevinVariant.VANILLA_SGLD:
        drifts = list(g_list)
    elif variant is LangevinVariant.PSGLD:
        drifts = [g / z for g, z in zip(g_list, zetas)]
    elif variant is LangevinVariant.FULL_ASGLD:
        drifts = [m / z for m, z in zip(state.m, zetas)]
    else:
        drifts = [g + state.a * (m / z) for g, m, z in zip(g_list, state.m, zetas)]
        if state.clip_mode is ClipMode.NORM:
            drifts = clip_global_norm(drifts, state.clip_c)
        else:
            drifts = [clip_combined(d, state.clip_c) for d in drifts]

    noise_scale = np.sqrt(2.0 * state.lr * state.t_inv)
    for i, (p, d) in enumerate(zip(p_list, drifts)):
        p -= state.lr * d
        if state.t_inv > 0:
            xi = rng.standard_normal(p.shape)
            if variant is LangevinVariant.FULL_ASGLD:
                p += noise_scale * xi / np.sqrt(zetas[i])
            else:
                p += noise_scale * xi
    state.step_count += 1
    params.mark_updated()


def optimizer_step(
    params: ParamSet,
    grads: GradSet,
    state: OptimizerState,
    variant: LangevinVariant | None,
    rng: np.random.Generator,
) -> None:
    """Dispatch to AdamW (``variant is None``) or the given Langevin variant."""
    if variant is None:
        adamw_step(params, grads, state)
    else:
        langevin_step(params, grads, state, variant, rng)
