# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import numpy as np
import pytest

from slsac.errors import RejectedInputError, RejectedTapeError
from slsac.nn import MlpParams, load_arrays, mlp_backward, mlp_forward, save_arrays, soft_update


@pytest.fixture(name="rng")
def fixture_rng():
    return np.random.default_rng(7)


def _loss(params, x, g):
    out, _ = mlp_forward(params, x)
    return float(np.sum(out * g))


def test_zero_network_outputs_zero(rng):
    """All-zero weights give a zero output and zero parameter gradients for the hidden layers."""
    params = MlpParams.zeros([3, 5, 2])
    x = rng.normal(size=(4, 3))
    out, tape = mlp_forward(params, x)
    assert out.shape == (4, 2)
    assert np.all(out == 0.0)
    grads = mlp_backward(params, tape, np.ones((4, 2)))
    assert np.all(grads.weights[0] == 0.0)
    assert np.all(grads.biases[1] == 4.0)


def test_relu_gates_negative_preactivations():
    params = MlpParams.zeros([1, 1, 1])
    params.layers[0].weight[...] = 1.0
    params.layers[1].weight[...] = 1.0
    out, _ = mlp_forward(params, np.array([[-2.0], [3.0]]))
    assert out[:, 0].tolist() == [0.0, 3.0]


def test_unbatched_input_keeps_vector_shape(rng):
    params = MlpParams.init([2, 4, 3], rng)
    out, tape = mlp_forward(params, np.array([0.1, -0.2]))
    assert out.shape == (3,)
    grads = mlp_backward(params, tape, np.ones(3))
    assert grads.input_grad.shape == (2,)


def test_forward_is_repeatable(rng):
    """Evaluating twice on the same input is bitwise identical."""
    params = MlpParams.init([3, 8, 8, 1], rng)
    x = rng.normal(size=(16, 3))
    first, _ = mlp_forward(params, x)
    second, _ = mlp_forward(params, x)
    assert np.array_equal(first, second)


def test_wrong_input_width_rejected(rng):
    params = MlpParams.init([3, 4, 1], rng)
    with pytest.raises(RejectedInputError):
        mlp_forward(params, np.zeros((2, 4)))


def test_invalid_sizes_rejected(rng):
    with pytest.raises(RejectedInputError):
        MlpParams.init([3], rng)
    with pytest.raises(RejectedInputError):
        MlpParams.init([3, 0, 1], rng)


def test_gradients_match_finite_differences(rng):
    """Reverse-mode gradients agree with central differences on random shapes."""
    h = 1e-6
    for _ in range(50):
        depth = int(rng.integers(1, 4))
        sizes = [int(n) for n in rng.integers(1, 7, size=depth + 1)]
        params = MlpParams.init(sizes, rng)
        x = rng.normal(size=(3, sizes[0]))
        g = rng.normal(size=(3, sizes[-1]))
        _, tape = mlp_forward(params, x)
        grads = mlp_backward(params, tape, g)
        for tensor, analytic in zip(params.tensors(), grads.tensors()):
            numeric = np.zeros_like(tensor)
            for idx in np.ndindex(tensor.shape):
                saved = tensor[idx]
                tensor[idx] = saved + h
                up = _loss(params, x, g)
                tensor[idx] = saved - h
                down = _loss(params, x, g)
                tensor[idx] = saved
                numeric[idx] = (up - down) / (2 * h)
            scale = max(1.0, float(np.max(np.abs(numeric))))
            assert np.max(np.abs(numeric - analytic)) / scale < 1e-5


def test_stale_tape_rejected(rng):
    """A tape recorded before a parameter update cannot be used for the backward pass."""
    params = MlpParams.init([2, 3, 1], rng)
    _, tape = mlp_forward(params, np.ones((1, 2)))
    params.mark_updated()
    with pytest.raises(RejectedTapeError):
        mlp_backward(params, tape, np.ones((1, 1)))


def test_tape_from_other_network_rejected(rng):
    params = MlpParams.init([2, 3, 1], rng)
    other = params.copy()
    _, tape = mlp_forward(other, np.ones((1, 2)))
    with pytest.raises(RejectedTapeError):
        mlp_backward(params, tape, np.ones((1, 1)))


def test_soft_update_endpoints(rng):
    online = MlpParams.init([2, 4, 1], rng)
    target = MlpParams.init([2, 4, 1], rng)
    before = [t.copy() for t in target.tensors()]
    soft_update(online, target, 0.0)
    assert all(np.array_equal(b, t) for b, t in zip(before, target.tensors()))
    soft_update(online, target, 1.0)
    assert all(np.array_equal(o, t) for o, t in zip(online.tensors(), target.tensors()))


def test_soft_update_quarter_step(rng):
    online = MlpParams.init([2, 4, 1], rng)
    target = MlpParams.init([2, 4, 1], rng)
    before = [t.copy() for t in target.tensors()]
    soft_update(online, target, 0.25)
    for o, b, t in zip(online.tensors(), before, target.tensors()):
        assert np.allclose(t, 0.75 * b + 0.25 * o)


def test_soft_update_contracts_towards_online(rng):
    """Repeated averaging shrinks the parameter gap geometrically."""
    online = MlpParams.init([3, 5, 2], rng)
    target = MlpParams.init([3, 5, 2], rng)

    def gap():
        return max(float(np.max(np.abs(o - t))) for o, t in zip(online.tensors(), target.tensors()))

    start = gap()
    for _ in range(10):
        soft_update(online, target, 0.1)
    assert gap() == pytest.approx(start * 0.9**10, rel=1e-9)


def test_soft_update_rejects_bad_inputs(rng):
    online = MlpParams.init([2, 4, 1], rng)
    with pytest.raises(RejectedInputError):
        soft_update(online, online.copy(), 1.5)
    with pytest.raises(RejectedInputError):
        soft_update(online, MlpParams.init([2, 3, 1], rng), 0.5)


def test_checkpoint_container_roundtrip(tmp_path, rng):
    arrays = {"a.weight": rng.normal(size=(3, 2)), "a.bias": rng.normal(size=3), "s": np.array([1.5])}
    path = tmp_path / "net.ckpt"
    save_arrays(path, arrays)
    assert path.read_bytes()[:8] == b"SLSACKPT"
    loaded = load_arrays(path)
    assert list(loaded) == list(arrays)
    for name, value in arrays.items():
        assert np.array_equal(loaded[name], value)


def test_checkpoint_rejects_foreign_file(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"NOTACHECKPOINTFILE--")
    with pytest.raises(RejectedInputError):
        load_arrays(path)
    path.write_bytes(b"abc")
    with pytest.raises(RejectedInputError):
        load_arrays(path)


def test_identity_layer_with_relu():
    params = MlpParams.zeros([2, 2, 2])
    params.layers[0].weight[...] = np.eye(2)
    params.layers[1].weight[...] = np.eye(2)
    out, _ = mlp_forward(params, np.array([1.0, -1.0]))
    assert out.tolist() == [1.0, 0.0]


def test_linear_layer_gradients_closed_form(rng):
    """For y = Wx + b the gradients are g x^T and g."""
    params = MlpParams.init([3, 2], rng)
    x = np.array([1.0, 2.0, -1.0])
    g = np.array([0.5, -2.0])
    _, tape = mlp_forward(params, x)
    grads = mlp_backward(params, tape, g)
    assert np.allclose(grads.weights[0], np.outer(g, x))
    assert np.allclose(grads.biases[0], g)
    assert np.allclose(grads.input_grad, params.layers[0].weight.T @ g)


def test_zero_cotangent_gives_zero_gradients(rng):
    params = MlpParams.init([2, 64, 64, 1], rng)
    _, tape = mlp_forward(params, rng.normal(size=(5, 2)))
    grads = mlp_backward(params, tape, np.zeros((5, 1)))
    assert all(not np.any(t) for t in grads.tensors())
