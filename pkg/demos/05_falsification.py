"""Break a pinned fixture on purpose and replay the witness.

One line of the Z8 fixture is changed so the second string set is no
longer halved into the first. The suite exits 4 and writes the broken file
as a witness, which fails the same way when fed back in.
"""
import tempfile
from pathlib import Path

from hullnorm.cli import main
from hullnorm.suites import packaged_fixtures

src = next(p for p in packaged_fixtures() if p.name == "z8.hn")
work = Path(tempfile.mkdtemp())
broken = work / "z8.hn"
broken.write_text(src.read_text().replace("prefix {0,1,7}", "prefix {0,1,2,7}", 1))

code = main(["suite", "--corpus-size", "0", "--fixtures", str(broken), "--witness-dir", str(work / "w")])
print("exit code", code)
witness = next((work / "w").iterdir())
print(witness.read_text().splitlines()[2])
code = main(["suite", "--corpus-size", "0", "--fixtures", str(witness), "--witness-dir", str(work / "again")])
print("replay exit code", code)
