import json

from parastrata.cli import run_command


def run_json(argv, payload):
    code, out, err = run_command(argv, json.dumps(payload).encode())
    return code, out, err


def result_of(argv, payload):
    code, out, err = run_json(argv, payload)
    assert code == 0, err.decode()
    return json.loads(out.decode())


CODIM_EXAMPLE = {"g": 2, "r": 2, "d": 2, "points": [{"weights": ["1/4", "1/2"], "mults": [1, 1]}]}
DIM_EXAMPLE = {"g": 3, "r": 2, "points": []}
GENERIC_EXAMPLE = {"rank": 2, "degree": 0, "points": [{"weights": ["1/4"], "mults": [2]}]}
PUSH_EXAMPLE = {
    "cover": {"degree": 2, "fibers": {"p": ["q1", "q2"]}},
    "datum": {
        "rank": 1,
        "degree": 0,
        "points": {
            "q1": {"weights": ["1/4"], "mults": [1]},
            "q2": {"weights": ["1/2"], "mults": [1]},
        },
    },
}
DESCEND_EXAMPLE = {
    "order": 2,
    "automorphism": [["0", "1"], ["1", "0"]],
    "flag": {"weights": ["1/4", "1/2"], "subspaces": [[["1", "0"], ["0", "1"]], [["1", "1"]]]},
}
FLAGCOH_EXAMPLE = {"type": [["A", 2]], "parabolics": [[1], [2]]}
STRATA_EXAMPLE = {"g": 2, "r": 2, "d": 2, "points": [{"weights": ["1/4", "1/2"], "mults": [1, 1]}]}


def test_codim_documented_example():
    report = result_of(["codim"], CODIM_EXAMPLE)
    res = report["result"]
    assert res["dim_M"] == 4
    assert res["max_stratum_dim"] == 1
    assert res["codim"] == 3
    assert res["bound"] == "2"
    assert res["meets_bound"] is True
    assert res["codim_at_least_three"] is True


def test_dim_documented_example():
    report = result_of(["dim"], DIM_EXAMPLE)
    assert report["result"] == {"dimension": 6}


def test_generic_documented_example():
    report = result_of(["generic"], GENERIC_EXAMPLE)
    res = report["result"]
    assert res["generic"] is False
    assert res["witness"]["sub_rank"] == 1
    assert res["witness"]["sub_degree"] == 0


def test_pushforward_subcommand():
    report = result_of(["pushforward"], PUSH_EXAMPLE)
    res = report["result"]
    assert res["rank"] == 2
    assert res["par_degree"] == "3/4"
    assert res["points"]["p"] == {"weights": ["1/4", "1/2"], "mults": [1, 1]}


def test_descend_subcommand():
    report = result_of(["descend"], DESCEND_EXAMPLE)
    res = report["result"]
    assert res["matrix"] == [[1, 0], [0, 1]]
    assert res["fixed_point_shape"] is True
    assert res["fibers"][0]["weights"] == ["1/4"]
    assert res["fibers"][1]["weights"] == ["1/2"]
    assert res["flag_endomorphism"] == {"convention": "strict", "holds": True}


def test_descend_convention_flag():
    report = result_of(["descend", "--convention", "non-strict"], DESCEND_EXAMPLE)
    assert report["result"]["flag_endomorphism"] == {
        "convention": "non-strict",
        "holds": False,
    }


def test_flagcoh_subcommand():
    report = result_of(["flagcoh"], FLAGCOH_EXAMPLE)
    res = report["result"]
    assert res["b2_F"] == 2
    assert res["t"] == 3
    assert res["poincare_F"] == [1, 2, 3, 2, 1]


def test_flagcoh_pic_rank_flag_override():
    report = result_of(["flagcoh", "--pic-rank-qg", "4"], FLAGCOH_EXAMPLE)
    assert report["result"]["t"] == 6


def test_strata_subcommand():
    report = result_of(["strata"], STRATA_EXAMPLE)
    res = report["result"]
    assert res["num_indices"] == 4
    assert res["num_systems"] == 2
    point = res["per_point"][0]
    nonempty = [idx for idx in point["indices"] if idx["matrices"]]
    assert len(nonempty) == 2


def test_reports_are_deterministic():
    for argv, payload in [
        (["codim"], CODIM_EXAMPLE),
        (["dim"], DIM_EXAMPLE),
        (["generic"], GENERIC_EXAMPLE),
        (["pushforward"], PUSH_EXAMPLE),
        (["descend"], DESCEND_EXAMPLE),
        (["flagcoh"], FLAGCOH_EXAMPLE),
        (["strata"], STRATA_EXAMPLE),
    ]:
        outputs = {run_json(argv, payload)[1] for _ in range(3)}
        assert len(outputs) == 1


def test_echo_roundtrip_is_idempotent():
    for argv, payload in [
        (["codim"], CODIM_EXAMPLE),
        (["dim"], DIM_EXAMPLE),
        (["generic"], GENERIC_EXAMPLE),
        (["pushforward"], PUSH_EXAMPLE),
        (["descend"], DESCEND_EXAMPLE),
        (["flagcoh"], FLAGCOH_EXAMPLE),
    ]:
        code, out, _ = run_json(argv, payload)
        assert code == 0
        echoed = json.loads(out.decode())["input"]
        code2, out2, _ = run_json(argv, echoed)
        assert code2 == 0
        assert out2 == out


def test_no_float_values_in_output():
    def walk(node):
        if isinstance(node, float):
            raise AssertionError(f"float leaked into output: {node}")
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    for argv, payload in [(["codim"], CODIM_EXAMPLE), (["pushforward"], PUSH_EXAMPLE)]:
        _, out, _ = run_json(argv, payload)
        walk(json.loads(out.decode()))


def test_sweep_mode_streams_reports():
    payload = {"g": [2], "r": [2], "max_points": 1, "max_flag_length": 2}
    code, out, err = run_json(["codim", "--sweep"], payload)
    assert code == 0, err
    lines = out.decode().strip().split("\n")
    assert len(lines) == 3  # no-point, one single-weight, one two-weight config
    for line in lines:
        rec = json.loads(line)
        assert rec["meets_bound"] is True


def test_validation_failures_exit_two_with_clean_stdout():
    cases = [
        (["codim"], {"g": 2, "r": 2, "d": 3, "points": []}),
        (["codim"], {"g": 1, "r": 2, "d": 2, "points": []}),
        (["codim"], {"g": 2, "r": 2, "d": 2}),
        (["dim"], {"g": 2, "r": 2, "points": [{"weights": [0.25], "mults": [2]}]}),
        (["dim"], {"g": 2, "r": 2, "points": [{"weights": ["1/4"], "mults": [1]}]}),
        (["generic"], {"rank": 2, "degree": 0, "points": [{"weights": ["5/4"], "mults": [2]}]}),
        (["descend"], {"order": 2, "automorphism": [["1", "1"], ["0", "1"]], "flag": {"weights": ["1/2"], "subspaces": [[["1", "0"], ["0", "1"]]]}}),
        (["flagcoh"], {"type": [["D", 3]], "parabolics": [[]]}),
        (["flagcoh"], {"type": [["A", 2]], "parabolics": []}),
    ]
    for argv, payload in cases:
        code, out, err = run_json(argv, payload)
        assert code == 2, (argv, payload, err)
        assert out == b""
        assert err.startswith(b"error: ")


def test_malformed_json_exits_two():
    code, out, err = run_command(["dim"], b"{not json")
    assert code == 2 and out == b""


def test_unknown_subcommand_and_options():
    code, _, err = run_command(["frobnicate"], b"")
    assert code == 2 and b"unknown subcommand" in err
    code, _, err = run_command(["dim", "--wat"], b"")
    assert code == 2 and b"unknown option" in err
    code, _, err = run_command(["dim", "--sweep"], b"")
    assert code == 2
    code, _, err = run_command([], b"")
    assert code == 2


def test_input_output_files(tmp_path):
    inp = tmp_path / "in.json"
    outp = tmp_path / "out.json"
    inp.write_text(json.dumps(DIM_EXAMPLE))
    code, out, err = run_command(["dim", "--input", str(inp), "--output", str(outp)])
    assert code == 0 and out == b""
    assert json.loads(outp.read_text())["result"] == {"dimension": 6}
    code, _, err = run_command(["dim", "--input", str(tmp_path / "missing.json")])
    assert code == 2


def test_help_exits_zero():
    code, out, _ = run_command(["--help"])
    assert code == 0
    assert b"usage" in out
