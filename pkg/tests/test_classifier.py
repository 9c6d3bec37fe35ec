"""Forward-pass kernels against hand computations and scalar-loop oracles."""

import math
from dataclasses import replace

import numpy as np
import pytest

from poseguard import (
    LstmParams,
    ValidationError,
    argmax_label,
    bilstm_layer_forward,
    conv1d_forward,
    dense_softmax,
    init_test_weights,
    lstm_cell_step,
    model_forward,
    softmax,
)

from oracles import reference_bilstm, reference_conv, reference_forward


def zero_lstm(hidden: int, inputs: int) -> LstmParams:
    return LstmParams(
        w=np.zeros((4 * hidden, inputs)),
        u=np.zeros((4 * hidden, hidden)),
        b=np.zeros(4 * hidden),
    )


class TestConv:
    def test_box_kernel_hand_case(self):
        # kernel (1,1,1) over (1,2,3) with zero padding -> (3, 6, 5)
        x = np.array([[1.0], [2.0], [3.0]])
        kernel = np.ones((1, 1, 3))
        out = conv1d_forward(x, kernel, np.zeros(1))
        np.testing.assert_allclose(out[:, 0], [3.0, 6.0, 5.0])

    def test_relu_clamps(self):
        x = np.array([[1.0], [2.0], [3.0]])
        kernel = np.ones((1, 1, 3))
        out = conv1d_forward(x, kernel, np.array([-100.0]))
        assert (out == 0.0).all()

    def test_matches_scalar_reference(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(7, 3))
        kernel = rng.normal(size=(4, 3, 3))
        bias = rng.normal(size=4)
        expected = reference_conv(x.tolist(), kernel.tolist(), bias.tolist())
        np.testing.assert_allclose(conv1d_forward(x, kernel, bias), expected, atol=1e-12)

    def test_batched_equals_loop(self):
        rng = np.random.default_rng(1)
        xs = rng.normal(size=(5, 6, 2))
        kernel = rng.normal(size=(3, 2, 3))
        bias = rng.normal(size=3)
        batched = conv1d_forward(xs, kernel, bias)
        for i in range(5):
            np.testing.assert_allclose(batched[i], conv1d_forward(xs[i], kernel, bias))


class TestLstmCell:
    def test_zero_weights_halve_cell_state(self):
        # all gates sigmoid(0)=0.5, g=tanh(0)=0 -> c = 0.5*c_prev
        params = zero_lstm(2, 3)
        h, c = lstm_cell_step(np.ones(3), np.zeros(2), np.ones(2), params)
        np.testing.assert_allclose(c, 0.5)
        np.testing.assert_allclose(h, 0.5 * math.tanh(0.5))

    def test_gate_order_is_i_f_g_o(self):
        # bias the f block hard positive: cell state must be preserved
        params = zero_lstm(1, 1)
        b = np.zeros(4)
        b[1] = 50.0  # f gate (second block)
        params = LstmParams(w=params.w, u=params.u, b=b)
        _, c = lstm_cell_step(np.zeros(1), np.zeros(1), np.array([0.8]), params)
        assert c[0] == pytest.approx(0.8, abs=1e-9)

    def test_batched_matches_single(self):
        rng = np.random.default_rng(2)
        hidden, inputs = 3, 4
        params = LstmParams(
            w=rng.normal(size=(4 * hidden, inputs)),
            u=rng.normal(size=(4 * hidden, hidden)),
            b=rng.normal(size=4 * hidden),
        )
        xs = rng.normal(size=(6, inputs))
        hs = rng.normal(size=(6, hidden))
        cs = rng.normal(size=(6, hidden))
        h_batch, c_batch = lstm_cell_step(xs, hs, cs, params)
        for i in range(6):
            h_one, c_one = lstm_cell_step(xs[i], hs[i], cs[i], params)
            np.testing.assert_allclose(h_batch[i], h_one)
            np.testing.assert_allclose(c_batch[i], c_one)


def random_lstm(rng, hidden, inputs) -> LstmParams:
    return LstmParams(
        w=rng.uniform(-0.5, 0.5, size=(4 * hidden, inputs)),
        u=rng.uniform(-0.5, 0.5, size=(4 * hidden, hidden)),
        b=rng.uniform(-0.5, 0.5, size=4 * hidden),
    )


class TestBiLstmLayer:
    def test_matches_scalar_oracle(self):
        rng = np.random.default_rng(3)
        fw = random_lstm(rng, 3, 2)
        bw = random_lstm(rng, 3, 2)
        x = rng.normal(size=(4, 2))
        expected = reference_bilstm(
            x.tolist(),
            (fw.w.tolist(), fw.u.tolist(), fw.b.tolist()),
            (bw.w.tolist(), bw.u.tolist(), bw.b.tolist()),
            return_sequences=True,
        )
        np.testing.assert_allclose(
            bilstm_layer_forward(x, fw, bw, return_sequences=True), expected, atol=1e-9
        )
        expected_last = reference_bilstm(
            x.tolist(),
            (fw.w.tolist(), fw.u.tolist(), fw.b.tolist()),
            (bw.w.tolist(), bw.u.tolist(), bw.b.tolist()),
            return_sequences=False,
        )
        np.testing.assert_allclose(
            bilstm_layer_forward(x, fw, bw, return_sequences=False),
            expected_last,
            atol=1e-9,
        )

    def test_direction_swap_symmetry(self):
        # reversing time AND swapping the directions reverses the output
        # sequence and swaps its halves
        rng = np.random.default_rng(4)
        for _ in range(20):
            hidden = int(rng.integers(1, 5))
            inputs = int(rng.integers(1, 5))
            steps = int(rng.integers(1, 7))
            fw = random_lstm(rng, hidden, inputs)
            bw = random_lstm(rng, hidden, inputs)
            x = rng.normal(size=(steps, inputs))
            out = bilstm_layer_forward(x, fw, bw, return_sequences=True)
            flipped = bilstm_layer_forward(x[::-1], bw, fw, return_sequences=True)
            recombined = np.concatenate(
                [flipped[::-1, hidden:], flipped[::-1, :hidden]], axis=1
            )
            np.testing.assert_allclose(out, recombined, atol=1e-9)

    def test_final_output_concatenates_ends(self):
        rng = np.random.default_rng(5)
        fw = random_lstm(rng, 2, 3)
        bw = random_lstm(rng, 2, 3)
        x = rng.normal(size=(6, 3))
        seq = bilstm_layer_forward(x, fw, bw, return_sequences=True)
        last = bilstm_layer_forward(x, fw, bw, return_sequences=False)
        np.testing.assert_allclose(last[:2], seq[-1, :2])  # forward half, final step
        np.testing.assert_allclose(last[2:], seq[0, 2:])  # backward half, first step


class TestSoftmaxDense:
    def test_uniform_logits(self):
        np.testing.assert_allclose(softmax(np.zeros(3)), 1 / 3)

    def test_ln2_hand_case(self):
        probs = softmax(np.array([math.log(2.0), 0.0, 0.0]))
        np.testing.assert_allclose(probs, [0.5, 0.25, 0.25], atol=1e-15)

    def test_shift_invariance(self):
        logits = np.array([0.3, -1.2, 2.0])
        np.testing.assert_allclose(
            softmax(logits), softmax(logits + 1000.0), atol=1e-12
        )

    def test_extreme_magnitude_sums_to_one(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            logits = rng.choice([-1e4, 0.0, 1e4], size=3) + rng.normal(size=3)
            probs = softmax(logits)
            assert abs(probs.sum() - 1.0) <= 1e-12
            assert (probs >= 0).all()

    def test_dense_applies_affine(self):
        w = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        b = np.array([0.0, 0.0, math.log(2.0)])
        probs = dense_softmax(np.array([0.0, 0.0]), w, b)
        np.testing.assert_allclose(probs, [0.25, 0.25, 0.5], atol=1e-15)


class TestModelForward:
    def test_tiny_config_matches_composed_oracle(self):
        weights = init_test_weights(9, (3, 2, 2, 2))
        rng = np.random.default_rng(7)
        window = rng.uniform(-1, 1, size=(3, 2))
        expected = reference_forward(window, weights)
        np.testing.assert_allclose(model_forward(window, weights), expected, atol=1e-9)

    def test_seed42_deterministic(self, tiny_weights):
        window = np.random.default_rng(8).uniform(-1, 1, size=(10, 24))
        first = model_forward(window, tiny_weights)
        second = model_forward(window.copy(), tiny_weights)
        assert (first == second).all()
        assert abs(first.sum() - 1.0) <= 1e-12

    def test_window_len_20_weights(self):
        weights = init_test_weights(1, (20, 24, 2, 2))
        window = np.zeros((20, 24))
        probs = model_forward(window, weights)
        assert probs.shape == (3,)

    def test_shape_mismatch_names_both(self, tiny_weights):
        with pytest.raises(ValidationError) as exc:
            model_forward(np.zeros((20, 24)), tiny_weights)
        assert "(20, 24)" in str(exc.value) and "(10, 24)" in str(exc.value)

    def test_batch_matches_single(self, tiny_weights):
        rng = np.random.default_rng(9)
        windows = rng.uniform(-1, 1, size=(4, 10, 24))
        batched = model_forward(windows, tiny_weights)
        for i in range(4):
            np.testing.assert_allclose(
                batched[i], model_forward(windows[i], tiny_weights), atol=1e-12
            )

    def test_zero_weights_give_uniform(self):
        weights = init_test_weights(0, (3, 2, 2, 2))
        zeroed = replace(
            weights,
            conv_kernel=np.zeros_like(weights.conv_kernel),
            conv_bias=np.zeros_like(weights.conv_bias),
            layers=tuple(
                (zero_lstm(2, fw.w.shape[1]), zero_lstm(2, bw.w.shape[1]))
                for fw, bw in weights.layers
            ),
            dense_w=np.zeros_like(weights.dense_w),
            dense_b=np.zeros_like(weights.dense_b),
        )
        np.testing.assert_allclose(model_forward(np.ones((3, 2)), zeroed), 1 / 3)


class TestArgmaxLabel:
    def test_plain_max(self):
        assert argmax_label(np.array([0.7, 0.2, 0.1])) == 0
        assert argmax_label(np.array([0.2, 0.3, 0.5])) == 2

    def test_exact_tie_prefers_neutral(self):
        assert argmax_label(np.array([1 / 3, 1 / 3, 1 / 3])) == 0

    def test_tie_between_non_neutral_prefers_aggressor_slot(self):
        # lowest index wins on exact ties by the fixed class order
        assert argmax_label(np.array([0.1, 0.45, 0.45])) == 1
