import re
from pathlib import Path

import pytest

from hullnorm import subsets as ss
from hullnorm.cli import FALSIFIED, OK, main
from hullnorm.structfile import parse
from hullnorm.suites import packaged_fixtures, run_fixtures

from .mutations import MUTATIONS, mutate


def test_fixtures_pass_unmutated(capsys):
    assert main(["suite", "--corpus-size", "0", "--fixtures"]) == OK
    assert "FAIL" not in capsys.readouterr().out


@pytest.mark.parametrize("name, old, new, why", MUTATIONS, ids=[f"{m[0]}:{m[1]}" for m in MUTATIONS])
def test_mutation_is_caught_and_replays(tmp_path, capsys, monkeypatch, name, old, new, why):
    src = tmp_path / name
    src.write_text(mutate(name, old, new))
    wdir = tmp_path / "w"
    assert main(["suite", "--corpus-size", "0", "--fixtures", str(src), "--witness-dir", str(wdir)]) == FALSIFIED
    witnesses = list(wdir.iterdir())
    assert len(witnesses) == 1
    text = witnesses[0].read_text()
    assert "replay: python3 -m hullnorm suite --corpus-size 0 --fixtures" in text
    capsys.readouterr()
    monkeypatch.chdir(wdir)
    assert main(["suite", "--corpus-size", "0", "--fixtures", witnesses[0].name,
                 "--witness-dir", str(tmp_path / "again")]) == FALSIFIED


def test_every_single_bit_flip_is_caught(tmp_path):
    """Flip each element in every set-valued line of every fixture."""
    entry = re.compile(r"^(point \d+|member|prefix|tail) (\{.*\})$")
    total = 0
    for path in map(Path, packaged_fixtures()):
        text = path.read_text()
        doc = parse(text)
        if doc.monoid_spec is None:
            continue
        n = doc.monoid.size
        lines = text.splitlines()
        for i, ln in enumerate(lines):
            m = entry.match(ln)
            if not m:
                continue
            s = ss.parse(m.group(2))
            for b in range(n):
                mut = lines.copy()
                mut[i] = f"{m.group(1)} {ss.fmt(s ^ (1 << b))}"
                out = tmp_path / path.name
                out.write_text("\n".join(mut) + "\n")
                total += 1
                assert run_fixtures([out], None).failed, f"{path.name}:{i + 1} bit {b} survived"
    assert total >= 400
