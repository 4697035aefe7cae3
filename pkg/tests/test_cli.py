import copy
import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from segcert.cli import main, parse_config, parse_config_dict, run
from segcert.errors import ValidationError
from segcert.reference import REFERENCE_CONFIGS

DATA = Path(__file__).parent / "data"
A15 = REFERENCE_CONFIGS[0]

MINIMAL = {"beta": "1.5", "sigma": "3", "epsilon": ["-0.05", "0.05"], "forcing": {"family": "A"}, "M": 6}


def published_block(ref=A15, s=6):
    return {
        "s": s,
        "C": ref.C,
        "boxes": [{"lo": "-" + r, "hi": r} for r in ref.boxes_r],
    }


def write(tmp_path, cfg, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def invoke(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


# ------------------------------------------------------------- parsing


def test_minimal_config_is_valid():
    problem, seg, opts = parse_config_dict(copy.deepcopy(MINIMAL))
    assert seg is None and opts.M == 6 and opts.iterations == 2
    assert problem.forcing.n_modes == 1
    assert opts.reference is not None and opts.reference.name == "A-1.5"


def test_explicit_segment_block_is_valid():
    cfg = dict(MINIMAL, segment=published_block())
    _, seg, _ = parse_config_dict(cfg)
    assert seg.s == 6 and seg.M == 6


def test_interval_pair_values():
    cfg = dict(MINIMAL, beta=["1.49", "1.51"])
    problem, _, _ = parse_config_dict(cfg)
    assert problem.beta.lo <= 1.49 and problem.beta.hi >= 1.51


def test_explicit_modes():
    cfg = {"beta": "1.5", "sigma": "3", "M": 6, "forcing": {"modes": [{"k": 3, "lo": "-0.01", "hi": "0.02"}]}}
    problem, _, opts = parse_config_dict(cfg)
    assert problem.forcing.support() == 3 and opts.reference is None


@pytest.mark.parametrize(
    "mutate, key",
    [
        (lambda c: c.update(epsilon=["0.05", "-0.05"]), "epsilon"),
        (lambda c: c.update(beta=1.5), "beta"),
        (lambda c: c.update(colour="red"), "config.colour"),
        (lambda c: c.pop("sigma"), "sigma"),
        (lambda c: c.pop("epsilon"), "epsilon"),
        (lambda c: c.update(forcing={"family": "Z"}), "forcing.family"),
        (lambda c: c.update(forcing={"family": "A", "extra": 1}), "forcing.extra"),
        (lambda c: c.update(M=0), "M"),
        (lambda c: c.update(M="6"), "M"),
        (lambda c: c.update(beta="1"), "beta"),
        (lambda c: c.update(beta="one"), "beta"),
        (lambda c: c.update(schema_version=7), "schema_version"),
        (lambda c: c.update(refine={"iterations": 0}), "refine.iterations"),
        (lambda c: c.update(refine={"speed": "1"}), "refine.speed"),
        (lambda c: c.update(refine={"floor": 1e-8}), "refine.floor"),
        (lambda c: c.update(segment={"s": 6, "C": "1", "boxes": []}), "segment.boxes"),
    ],
)
def test_schema_violations_name_the_key(mutate, key):
    cfg = copy.deepcopy(MINIMAL)
    mutate(cfg)
    with pytest.raises(ValidationError) as info:
        parse_config_dict(cfg)
    assert info.value.key == key
    assert key in str(info.value)


def test_parse_config_missing_file(tmp_path):
    with pytest.raises(Exception):
        parse_config(tmp_path / "none.json")


# ---------------------------------------------------------- subcommands


def test_certify_table3_column(tmp_path):
    cfg = write(tmp_path, dict(MINIMAL, segment=published_block()))
    out = tmp_path / "cert.json"
    res = invoke("certify", "--config", cfg, "--out", str(out))
    assert res.exit_code == 0, res.output
    cert = json.loads(out.read_text())
    assert cert["passed"] and "norms" in cert and "decay" in cert


def test_certify_golden_and_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cfg = str(DATA / "a15_config.json")
    assert invoke("certify", "--config", cfg, "--out", str(a)).exit_code == 0
    assert invoke("certify", "--config", cfg, "--out", str(b)).exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    got = json.loads(a.read_text())
    got.pop("toolchain")
    assert got == json.loads((DATA / "a15_certificate.json").read_text())


def test_certify_to_stdout_json():
    res = invoke("certify", "--config", str(DATA / "a15_config.json"), "--format", "json")
    assert res.exit_code == 0
    assert json.loads(res.output)["schema_version"] == 1


def test_refine_and_verify(tmp_path):
    res = invoke("refine", "--config", str(DATA / "a15_config.json"), "--format", "json")
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["passed"] and payload["segment"]["s"] == 6
    res = invoke("refine", "--config", str(DATA / "a15_config.json"), "--iterations", "1")
    assert res.exit_code == 1
    assert "s=5" in res.output


def test_verify_needs_segment():
    res = invoke("verify", "--config", str(DATA / "a15_config.json"))
    assert res.exit_code == 2
    assert "segment" in res.output


def test_verify_s5_segment_fails(tmp_path):
    cfg = write(tmp_path, dict(MINIMAL, segment=published_block(s=5)))
    res = invoke("verify", "--config", cfg)
    assert res.exit_code == 1
    assert "s=5" in res.output


def test_forcing_above_m_fails_with_diagnostic(tmp_path):
    cfg = {"beta": "1.5", "sigma": "3", "M": 6, "segment": published_block(),
           "forcing": {"modes": [{"k": 1, "lo": "-0.05", "hi": "0.05"}, {"k": 7, "lo": "-0.001", "hi": "0.001"}]}}
    res = invoke("verify", "--config", write(tmp_path, cfg))
    assert res.exit_code == 1
    assert "forcing mode 7" in res.output


def test_oversized_epsilon_exit_1(tmp_path):
    cfg = dict(MINIMAL, epsilon=["-10", "10"], refine={"c_tilde": "3.1"})
    res = invoke("refine", "--config", write(tmp_path, cfg))
    assert res.exit_code == 1
    assert "diverged" in res.output


def test_sample(tmp_path):
    res = invoke("sample", "--config", str(DATA / "a15_config.json"), "--points", "200", "--format", "json")
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["all_positive"] and len(payload["faces"]) == 8
    res = invoke("sample", "--config", str(DATA / "a15_config.json"), "--modes", "3")
    assert res.exit_code == 2


def test_table_text_and_threads():
    res = invoke("table")
    assert res.exit_code == 0
    for ref in REFERENCE_CONFIGS:
        assert ref.name in res.output
    j1 = invoke("table", "--format", "json", env={"SEGCERT_THREADS": "1"})
    j4 = invoke("table", "--format", "json", env={"SEGCERT_THREADS": "4"})
    assert j1.exit_code == 0 and j1.output == j4.output
    rows = json.loads(j1.output)["rows"]
    assert [r["name"] for r in rows] == [r.name for r in REFERENCE_CONFIGS]
    assert all(r["passed"] and r["s"] == 6 for r in rows)


def test_bad_thread_setting():
    assert invoke("table", env={"SEGCERT_THREADS": "zero"}).exit_code == 2


def test_missing_and_invalid_files(tmp_path):
    assert invoke("refine", "--config", str(tmp_path / "nope.json")).exit_code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert invoke("refine", "--config", str(bad)).exit_code == 2
    assert invoke("refine").exit_code == 2  # missing required option


def test_run_helper():
    assert run(["refine", "--config", str(DATA / "a15_config.json")]) == 0
    assert run(["bogus"]) == 2


# ------------------------------------------------- malformed-input property

_values = st.one_of(
    st.floats(allow_nan=False, allow_infinity=False),
    st.integers(min_value=-5, max_value=5),
    st.text(max_size=5),
    st.none(),
    st.booleans(),
    st.lists(st.integers(), max_size=3),
)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(key=st.sampled_from(sorted(MINIMAL) + ["bogus"]), value=_values)
def test_malformed_configs_exit_2(tmp_path, key, value):
    cfg = copy.deepcopy(MINIMAL)
    cfg[key] = value
    try:
        parse_config_dict(copy.deepcopy(cfg))
    except ValidationError as exc:
        expected_key = exc.key
    else:
        return  # the mutation happened to be valid (e.g. M=5)
    path = write(tmp_path, cfg, "m.json")
    res = invoke("refine", "--config", path)
    assert res.exit_code == 2
    assert expected_key.split("[")[0].split(".")[0] in res.output
