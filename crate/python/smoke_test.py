"""Build the extension, import it and exercise the main entry points.

Run from the repository root: python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module(dest):
    subprocess.run(
        ["cargo", "build", "-q", "-p", "catmate-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "debug" / ("libcatmate.dylib" if sys.platform == "darwin" else "libcatmate.so")
    shutil.copy(lib, pathlib.Path(dest) / "catmate.so")
    sys.path.insert(0, str(dest))


def main():
    with tempfile.TemporaryDirectory() as tmp:
        build_module(tmp)
        import catmate

        arrow = catmate.fixture("Arrow")
        assert arrow.objects == ["0", "1"]
        assert arrow.compose("i", "id_0") == "i"
        assert not arrow.is_iso("i")

        loc = catmate.localize_rel_arrow(4)
        assert loc.exact and len(loc.ho) == 4
        assert loc.ho.is_iso(dict(loc.h)["i"])
        assert not catmate.localize_rel_arrow(1).exact

        ws = catmate.parse_files([str(ROOT / "fixtures" / "corpus.cat")])
        assert "RelArrow" in ws.relcats
        again = catmate.parse(ws.serialize())
        assert again.categories == ws.categories

        rep = ws.check("localization")
        data = json.loads(rep.json)
        assert rep.exit_code == 0 and data["summary"]["fail"] == 0
        assert ws.check("localization", bound=1).exit_code == 2

        try:
            catmate.parse("category X\n  object a\n  morphism f : a -> b\nend\n")
        except ValueError as e:
            assert "b" in str(e)
        else:
            raise AssertionError("bad input parsed")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
