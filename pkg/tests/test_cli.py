import json
import os
from fractions import Fraction

import pytest

from binwaring import jsonio
from binwaring.cli import main
from binwaring.fields import PrimeField, QQ
from binwaring.forms import BinaryForm
from binwaring.jsonio import (
    DocumentError,
    ball_from_json,
    decimal_to_fraction,
    dyadic_to_decimal,
    form_from_json,
    form_to_json,
)


PAPER_DOC = {"degree": 4, "normalized": ["1", "2", "3", "4", "5"]}


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_form_document_roundtrip():
    f = form_from_json(PAPER_DOC, QQ)
    assert f.a == (1, 2, 3, 4, 5)
    assert form_from_json(form_to_json(f), QQ) == f
    raw = {"degree": 4, "coeffs": ["1", "8", "18", "16", "5"]}
    g = form_from_json(raw, QQ)
    assert g.a == (1, 2, 3, 4, 5)
    assert form_from_json(form_to_json(g), QQ) == g
    assert form_to_json(g)["coeffs"] == ["1", "8", "18", "16", "5"]


def test_form_document_validation():
    for bad in (
        {"degree": 4},
        {"degree": 4, "coeffs": ["1"] * 5, "normalized": ["1"] * 5},
        {"degree": 4, "normalized": ["1"] * 4},
        {"degree": "4", "normalized": ["1"] * 5},
        {"degree": 2, "normalized": ["0", "0", "0"]},
        [],
    ):
        with pytest.raises(DocumentError):
            form_from_json(bad, QQ)


def test_dyadic_decimal_roundtrip():
    for q in (Fraction(0), Fraction(3, 4), Fraction(-5, 8), Fraction(7), Fraction(1, 2 ** 70), Fraction(-3, 2 ** 40)):
        s = dyadic_to_decimal(q)
        assert decimal_to_fraction(s) == q
    assert dyadic_to_decimal(Fraction(1, 3)) == "1/3"  # non-dyadic falls back
    assert decimal_to_fraction("1/3") == Fraction(1, 3)


def test_ball_from_json_accepts_exact_strings():
    (re, im), rad = ball_from_json("-3/16")
    assert (re, im, rad) == (Fraction(-3, 16), 0, 0)
    (re, im), rad = ball_from_json({"re": "0.5", "im": "-0.25", "rad": "0"})
    assert (re, im) == (Fraction(1, 2), Fraction(-1, 4))


def test_parse_field():
    assert jsonio.parse_field("rational") is QQ or jsonio.parse_field("rational") == QQ
    assert jsonio.parse_field("prime:10007") == PrimeField(10007)
    with pytest.raises(DocumentError):
        jsonio.parse_field("prime:91")
    with pytest.raises(DocumentError):
        jsonio.parse_field("galois")


def test_cmd_rank_output(tmp_path, capsys):
    path = _write(tmp_path, "f.json", PAPER_DOC)
    assert main(["rank", path]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "rank=4 border_rank=2 unique=false N1=1 N2=3"


def test_cmd_rank_pure_power(tmp_path, capsys):
    path = _write(tmp_path, "f.json", {"degree": 5, "normalized": ["0"] * 5 + ["1"]})
    assert main(["rank", path]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("rank=1 border_rank=1 unique=true")


def test_cmd_rank_zero_form_is_input_error(tmp_path, capsys):
    path = _write(tmp_path, "z.json", {"degree": 3, "normalized": ["0"] * 4})
    assert main(["rank", path]) == 2


def test_cmd_decompose_and_verify_roundtrip(tmp_path, capsys):
    form = _write(tmp_path, "f.json", PAPER_DOC)
    out = str(tmp_path / "d.json")
    assert main(["decompose", form, "--bits", "64", "--output", out]) == 0
    doc = json.loads((tmp_path / "d.json").read_text())
    assert doc["rank"] == 4 and doc["border_rank"] == 2 and doc["unique"] is False
    bound = decimal_to_fraction(doc["numeric"]["residual_bound"])
    assert bound <= Fraction(1, 2 ** 64)
    assert main(["verify", form, out, "--bits", "64"]) == 0
    capsys.readouterr()


def test_cmd_decompose_symbolic_only_then_verify(tmp_path, capsys):
    form = _write(tmp_path, "f.json", PAPER_DOC)
    out = str(tmp_path / "d.json")
    assert main(["decompose", form, "--symbolic-only", "--output", out]) == 0
    assert main(["verify", form, out, "--bits", "128"]) == 0
    capsys.readouterr()


def test_cmd_verify_exact_paper_identity(tmp_path, capsys):
    form = _write(tmp_path, "f.json", PAPER_DOC)
    exact = {
        "numeric": {
            "terms": [
                {"lambda": "-625/336", "alpha": "11/5", "at_infinity": False},
                {"lambda": "3", "alpha": "2", "at_infinity": False},
                {"lambda": "1/21", "alpha": "-2", "at_infinity": False},
                {"lambda": "-3/16", "alpha": "-1", "at_infinity": False},
            ]
        }
    }
    dec = _write(tmp_path, "exact.json", exact)
    assert main(["verify", form, dec, "--bits", "256"]) == 0
    capsys.readouterr()


def test_cmd_verify_detects_perturbation_and_missing_terms(tmp_path, capsys):
    form = _write(tmp_path, "f.json", {"degree": 3, "normalized": ["1"] * 4})
    perturbed = {
        "numeric": {
            "terms": [
                {
                    "lambda": str(Fraction(1) + Fraction(1, 2 ** 10)),
                    "alpha": "1",
                    "at_infinity": False,
                }
            ]
        }
    }
    dec = _write(tmp_path, "p.json", perturbed)
    assert main(["verify", form, dec, "--bits", "20"]) == 1
    missing = {"numeric": {"terms": []}}
    dec2 = _write(tmp_path, "m.json", missing)
    assert main(["verify", form, dec2, "--bits", "10"]) == 1
    capsys.readouterr()


def test_cmd_decompose_prime_with_bits_is_input_error(tmp_path, capsys):
    form = _write(tmp_path, "f.json", PAPER_DOC)
    rc = main(["decompose", form, "--field", "prime:2147483647", "--bits", "64"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "rational" in err


def test_cmd_decompose_prime_symbolic_works(tmp_path, capsys):
    form = _write(tmp_path, "f.json", PAPER_DOC)
    assert main(["decompose", form, "--field", "prime:10007"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rank"] == 4 and doc["field"] == "prime:10007"


def test_cmd_gen_modes_roundtrip(tmp_path, capsys):
    for mode, extra in (
        ("rational-roots", ["--rank", "3", "--degree", "7"]),
        ("kernel-pair", ["--pv", "1,0,0,0", "--pw", "0,0,0,1"]),
        ("generic", ["--degree", "9"]),
    ):
        out = str(tmp_path / f"{mode}.json")
        assert main(["gen", "--mode", mode, *extra, "--seed", "3", "--output", out]) == 0
        truth = json.loads((tmp_path / f"{mode}.json.truth.json").read_text())
        dec = str(tmp_path / f"{mode}.dec.json")
        assert main(["decompose", out, "--bits", "64", "--output", dec]) == 0
        assert main(["verify", out, dec, "--bits", "64"]) == 0
        doc = json.loads((tmp_path / f"{mode}.dec.json").read_text())
        if mode == "rational-roots":
            assert doc["rank"] == truth["rank"] == 3
        if mode == "generic":
            assert doc["rank"] == truth["expected_generic_rank"] == 5
        if mode == "kernel-pair":
            assert doc["rank"] == truth["rank"] == 3
    capsys.readouterr()


def test_cmd_gen_missing_params(tmp_path):
    assert main(["gen", "--mode", "rational-roots"]) == 2
    assert main(["gen", "--mode", "kernel-pair"]) == 2
    assert main(["gen", "--mode", "generic"]) == 2


def test_cmd_decompose_batch(tmp_path, capsys):
    indir = tmp_path / "in"
    outdir = tmp_path / "out"
    indir.mkdir()
    for i, a in enumerate(([1, 2, 3, 4, 5], [1, 1, 1, 1], [0, 0, 1, 0, 0])):
        (indir / f"f{i}.json").write_text(
            json.dumps({"degree": len(a) - 1, "normalized": [str(x) for x in a]})
        )
    assert main(["decompose", str(indir), "--batch", "--output", str(outdir)]) == 0
    index = json.loads((outdir / "index.json").read_text())
    assert [e["input"] for e in index["results"]] == ["f0.json", "f1.json", "f2.json"]
    assert index["failures"] == []
    assert main(["decompose", str(indir), "--batch"]) == 2  # needs --output
    capsys.readouterr()


def test_numeric_budget_exit_code(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WARING_MAX_PRECISION_BITS", "96")
    form = _write(tmp_path, "f.json", PAPER_DOC)
    rc = main(["decompose", form, "--bits", "512"])
    assert rc == 3
    capsys.readouterr()


def test_cmd_bench_rational_small(tmp_path, capsys):
    out = str(tmp_path / "bench.csv")
    rc = main(
        ["bench", "--field", "rational", "--degrees", "24,48", "--repeat", "1",
         "--output", out]
    )
    assert rc == 0
    lines = (tmp_path / "bench.csv").read_text().strip().splitlines()
    assert lines[0].startswith("D,")
    assert len(lines) == 3
    capsys.readouterr()


def test_cmd_bench_prime(tmp_path, capsys):
    rc = main(["bench", "--field", "prime:2305843009213693951",
               "--degrees", "128,256", "--repeat", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "doubling ratio" in out


def test_decomposition_document_roundtrip_stability(tmp_path):
    from binwaring.decompose import fast_decompose
    from binwaring.numeric import decompose_numeric

    f = BinaryForm.from_normalized(QQ, [1, 2, 3, 4, 5])
    sd = fast_decompose(f)
    nd = decompose_numeric(sd, f, 64)
    doc = jsonio.decomposition_to_json(sd, nd)
    text = json.dumps(doc)
    assert json.loads(text) == doc  # decode(encode(x)) == x
    terms = jsonio.terms_from_json(json.loads(text))
    assert len(terms) == 4
