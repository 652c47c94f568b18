import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ltivp.errors import ProblemFileError
from ltivp.problemfile import (
    ParsedProblem,
    emit_problem,
    load_problem,
    parse_problem,
    parse_signal_spec,
)
from ltivp.signal import Signal


def base_data(**overrides):
    data = {
        "ode": {"a": [6, 5], "b": [1, 3, 2]},
        "input": {"past": "cos 1", "future": "ramp"},
        "conditions": {"kind": "previous", "y": [1, 0]},
        "horizon": 3.0,
    }
    data.update(overrides)
    return data


class TestParseSignalSpec:
    def test_number_is_constant(self):
        assert parse_signal_spec(2.5, "x") == Signal.constant(2.5)

    def test_sugar(self):
        ts = np.linspace(0, 2, 9)
        cases = {
            "zero": Signal.zero(),
            "step": Signal.constant(1.0),
            "ramp": Signal.ramp(),
            "cos 2": Signal.cosine(2.0),
            "sin 0.5": Signal.sine(0.5),
            "exp -1": Signal.exponential(-1.0),
        }
        for spec, want in cases.items():
            got = parse_signal_spec(spec, "x")
            assert_allclose(got(ts), want(ts), atol=1e-15)

    def test_mode_dicts(self):
        got = parse_signal_spec(
            [{"amp": 2.0, "power": 1, "rate": -1.0}], "x"
        )
        assert got(1.0) == pytest.approx(2.0 * np.exp(-1.0))

    def test_mode_dict_complex_pair(self):
        got = parse_signal_spec(
            [
                {"amp": [0.5, 0.0], "rate": [0.0, 2.0]},
                {"amp": [0.5, 0.0], "rate": [0.0, -2.0]},
            ],
            "x",
        )
        assert got == Signal.cosine(2.0)

    def test_mode_arrays(self):
        three = parse_signal_spec([[1.0, 0, -2.0]], "x")
        four = parse_signal_spec([[0.5, 0, 0.0, 3.0], [0.5, 0, 0.0, -3.0]], "x")
        assert three == Signal.exponential(-2.0)
        assert four == Signal.cosine(3.0)

    def test_rejects_garbage(self):
        with pytest.raises(ProblemFileError, match="unknown signal"):
            parse_signal_spec("sawtooth", "input.future")
        with pytest.raises(ProblemFileError, match="cos"):
            parse_signal_spec("cos", "x")
        with pytest.raises(ProblemFileError, match="power"):
            parse_signal_spec([[1.0, -1, 0.0]], "x")
        with pytest.raises(ProblemFileError, match=r"x\[0\].amp"):
            parse_signal_spec([{"power": 0, "rate": 0.0}], "x")
        with pytest.raises(ProblemFileError):
            parse_signal_spec(None, "x")


class TestParseProblem:
    def test_full_example(self):
        parsed = parse_problem(base_data(grid=100))
        p = parsed.problem
        assert p.ode.n == 2
        assert_allclose(p.ode.a, [6, 5])
        assert_allclose(p.ode.b, [1, 3, 2])
        assert p.conditions.kind == "previous"
        assert_allclose(p.conditions.y_prev, [1, 0])
        assert p.input.past == Signal.cosine(1.0)
        assert p.input.future == Signal.ramp()
        assert p.horizon == 3.0
        assert parsed.grid_points == 100
        assert parsed.ssr is None

    def test_step_input_string(self):
        parsed = parse_problem(base_data(input="step"))
        assert parsed.problem.input.past == Signal.zero()
        assert parsed.problem.input.future == Signal.constant(1.0)

    def test_first_form_defaults_past_to_zero(self):
        data = base_data(
            input={"future": "ramp"},
            conditions={"kind": "first", "y": [5, -1]},
        )
        parsed = parse_problem(data)
        assert parsed.problem.input.past == Signal.zero()
        assert_allclose(parsed.problem.conditions.y_first, [5, -1])

    def test_previous_form_requires_past(self):
        with pytest.raises(ProblemFileError, match="input.past"):
            parse_problem(base_data(input={"future": "ramp"}))

    def test_ssr_block(self):
        data = base_data(
            ssr={"A": [[0, -5], [1, -6]], "B": [1, 1], "C": [0, 1], "D": 0}
        )
        parsed = parse_problem(data)
        assert parsed.ssr is not None
        assert_allclose(parsed.ssr.A, [[0, -5], [1, -6]])
        assert_allclose(parsed.ssr.B, [1, 1])
        assert parsed.ssr.D == 0.0

    def test_optional_fields_absent(self):
        data = base_data()
        del data["horizon"]
        parsed = parse_problem(data)
        assert parsed.problem.horizon is None
        assert parsed.grid_points is None


class TestFieldErrors:
    def test_unknown_top_level(self):
        with pytest.raises(ProblemFileError, match="unknown top-level fields: tolerance"):
            parse_problem(base_data(tolerance=1e-9))

    def test_missing_ode(self):
        data = base_data()
        del data["ode"]
        with pytest.raises(ProblemFileError, match="ode: missing"):
            parse_problem(data)

    def test_b_length(self):
        with pytest.raises(ProblemFileError, match=r"ode\.b: expected length 3"):
            parse_problem(base_data(ode={"a": [6, 5], "b": [1, 1]}))

    def test_conditions_length(self):
        with pytest.raises(ProblemFileError, match=r"conditions\.y: expected length 2"):
            parse_problem(
                base_data(conditions={"kind": "previous", "y": [1.0]})
            )

    def test_conditions_kind(self):
        with pytest.raises(ProblemFileError, match="conditions.kind"):
            parse_problem(base_data(conditions={"kind": "both", "y": [1, 0]}))

    def test_bad_horizon(self):
        with pytest.raises(ProblemFileError, match="horizon"):
            parse_problem(base_data(horizon=-1.0))

    def test_bad_grid(self):
        with pytest.raises(ProblemFileError, match="grid"):
            parse_problem(base_data(grid=0))
        with pytest.raises(ProblemFileError, match="grid"):
            parse_problem(base_data(grid=2.5))

    def test_non_number_coefficient(self):
        with pytest.raises(ProblemFileError, match=r"ode\.a\[1\]"):
            parse_problem(base_data(ode={"a": [6, "5"], "b": [1, 3, 2]}))

    def test_bad_ssr_shape(self):
        with pytest.raises(ProblemFileError, match="ssr"):
            parse_problem(
                base_data(ssr={"A": [[0, -5]], "B": [1, 1], "C": [0, 1], "D": 0})
            )


class TestLoadProblem:
    def test_reads_shipped_examples(self):
        for name in ("ramp_input", "input_switch", "step_from_rest"):
            parsed = load_problem(f"problems/{name}.json")
            assert parsed.problem.horizon == 3.0

    def test_missing_file(self):
        with pytest.raises(ProblemFileError, match="no_such"):
            load_problem("problems/no_such.json")

    def test_invalid_json_reports_position(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"ode": }')
        with pytest.raises(ProblemFileError, match="line 1"):
            load_problem(str(bad))


class TestEmit:
    def test_roundtrip_equal(self):
        parsed = parse_problem(
            base_data(
                grid=150,
                ssr={"A": [[0, -5], [1, -6]], "B": [1, 1], "C": [0, 1], "D": 0},
            )
        )
        text = emit_problem(parsed)
        again = parse_problem(json.loads(text))
        assert again.problem.input.past == parsed.problem.input.past
        assert again.problem.input.future == parsed.problem.input.future
        assert_allclose(again.problem.ode.a, parsed.problem.ode.a)
        assert again.problem.conditions.kind == parsed.problem.conditions.kind
        assert again.grid_points == 150
        assert_allclose(again.ssr.A, parsed.ssr.A)

    def test_emission_is_stable(self):
        parsed = parse_problem(base_data())
        once = emit_problem(parsed)
        twice = emit_problem(parse_problem(json.loads(once)))
        assert once == twice

    def test_no_negative_zero(self):
        parsed = parse_problem(base_data(input={"past": "cos 1", "future": "sin 2"}))
        assert "-0.0" not in emit_problem(parsed)

    def test_ends_with_newline(self):
        assert emit_problem(parse_problem(base_data())).endswith("}\n")
