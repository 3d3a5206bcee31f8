#!/usr/bin/env python3
"""End-to-end checks of the nmlkit command line.

usage: cli_test.py NMLKIT_BINARY SCHEMA_DIR
"""
import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BINARY = ""
SCHEMAS = Path()


def run(*args, env=None, stdin=None):
    full_env = dict(os.environ)
    full_env.pop("NMLKIT_LIMITS", None)
    full_env.update(env or {})
    return subprocess.run([BINARY, *args], capture_output=True, text=True, env=full_env, input=stdin, timeout=300)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


class Cli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def file(self, name, text):
        p = self.dir / name
        p.write_text(text)
        return str(p)

    def json_ok(self, schema_name, *args, env=None):
        r = run("--json", *args, env=env)
        self.assertEqual(r.returncode, 0, r.stderr)
        out = json.loads(r.stdout)
        jsonschema.validate(out, schema(schema_name))
        return out

    def test_dl_solve(self):
        f = self.file("ex1.dt", "d: T ; p ; q\n")
        self.assertEqual(run("--json", "dl", "solve", f).stdout.strip(), '{"exists":true,"witnesses":[[1]]}')
        out = self.json_ok("dl-solve", "dl", "solve", f, "--oracle", "twdp")
        self.assertEqual(out["witnesses"], [[1]])
        self.assertTrue(self.json_ok("dl-solve", "dl", "solve", f, "--method", "mso")["exists"])
        g = self.file("ex2.dt", "d: T ; p ; !p\n")
        self.assertEqual(self.json_ok("dl-solve", "dl", "solve", g), {"exists": False, "witnesses": []})
        self.assertFalse(self.json_ok("dl-solve", "dl", "solve", g, "--method", "mso")["exists"])

    def test_ael_solve(self):
        f = self.file("a.ae", "L p -> p\n")
        out = self.json_ok("ael-solve", "ael", "solve", f)
        self.assertEqual(out["full_sets"], [[{"Lphi": "L p", "sign": "-"}], [{"Lphi": "L p", "sign": "+"}]])
        g = self.file("b.ae", "!L p -> p\n")
        self.assertFalse(self.json_ok("ael-solve", "ael", "solve", g)["exists"])
        self.assertFalse(self.json_ok("ael-solve", "ael", "solve", g, "--method", "mso")["exists"])

    def test_fmt(self):
        s = self.file("s.fs", "p\n!p | q\n")
        for method in ("brute", "dp"):
            self.assertTrue(self.json_ok("check-sat", "fmt", "check-sat", s, "--method", method)["satisfiable"])
        u = self.file("u.fs", "p & !p\n")
        self.assertFalse(self.json_ok("check-sat", "fmt", "check-sat", u, "--method", "dp")["satisfiable"])
        i = self.file("i.imp", "p: p\np: p -> q\nc: q\n")
        j = self.file("j.imp", "p: p | q\nc: p\n")
        for method in ("brute", "dp"):
            self.assertTrue(self.json_ok("check-imp", "fmt", "check-imp", i, "--method", method)["implies"])
            self.assertFalse(self.json_ok("check-imp", "fmt", "check-imp", j, "--method", method)["implies"])

    def test_tw_pipeline(self):
        gr = str(self.dir / "pc5_2.gr")
        r = run("gen", "pseudo-clique", "-n", "5", "-k", "2", "--labels", "-o", gr)
        self.assertEqual(r.returncode, 0, r.stderr)
        out = self.json_ok("tw-compute", "tw", "compute", gr, "--exact")
        self.assertEqual(out["width"], 4)
        self.assertTrue(out["exact"])
        td = str(self.dir / "pc.td")
        self.assertEqual(run("tw", "compute", gr, "-o", td).returncode, 0)
        v = self.json_ok("tw-verify", "tw", "verify", gr, td)
        self.assertTrue(v["valid"])
        n = self.json_ok("tw-normalize", "tw", "normalize", gr, td, "--labels", str(self.dir / "pc5_2.labels"))
        self.assertLessEqual(n["width_after"], n["width_before"])
        ntd = self.file("n.td", n["td"])
        self.assertTrue(self.json_ok("tw-verify", "tw", "verify", gr, ntd)["valid"])
        lb = self.json_ok("tw-lower-bound", "tw", "lower-bound", gr)
        self.assertEqual(lb["bound"], 5)

    def test_tw_verify_reports_violations(self):
        gr = self.file("tri.gr", "p tw 3 3\n1 2\n2 3\n1 3\n")
        td = self.file("tri.td", "s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 1 3\n1 2\n2 3\n")
        out = self.json_ok("tw-verify", "tw", "verify", gr, td)
        self.assertFalse(out["valid"])
        self.assertTrue(out["violations"])

    def test_struct_and_mso(self):
        s = self.file("s.fs", "p | q\n")
        out = self.json_ok("struct-build", "struct", "build", s)
        self.assertEqual([e["description"] for e in out["universe"]], ["p", "q", "p | q"])
        self.assertTrue(self.json_ok("mso-eval", "mso", "eval", s, "--paper", "sat")["value"])
        u = self.file("u.fs", "p & !p\n")
        self.assertFalse(self.json_ok("mso-eval", "mso", "eval", u, "--paper", "sat")["value"])
        self.assertTrue(self.json_ok("mso-eval", "mso", "eval", s, "--formula", "E x. var(x)")["value"])

    def test_gen(self):
        out = self.json_ok("gen", "gen", "dl-lower", "-n", "2")
        self.assertEqual(out["content"], "d: x1 ; y1 ; F\nd: x1 ; y2 ; F\nd: x2 ; y2 ; F\n")
        self.assertEqual(run("gen", "ael-lower", "-k", "2").stdout, "x1 | x1\nx1 | x2\nx2 | x2\n")
        self.assertEqual(run("gen", "chain", "-n", "2").stdout, "x1\nx1 -> x2\n")
        imp = self.file("x.imp", run("gen", "imp-lower", "--kind", "xor3", "-n", "4").stdout)
        self.json_ok("check-imp", "fmt", "check-imp", imp)
        dt = self.file("sym.dt", run("gen", "dl-lower", "-n", "3", "--variant", "symmetric").stdout)
        self.json_ok("dl-solve", "dl", "solve", dt)

    def test_bench(self):
        r = run("bench", "--family", "chain", "--params", "100,200", "--method", "dp")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.strip().splitlines()
        self.assertEqual(lines[0], "family,param,n_vertices,width,method,wall_ms,verdict")
        self.assertEqual(len(lines), 3)
        r = run("bench", "--family", "chain", "--params", "26,4", "--method", "brute")
        self.assertEqual([l.split(",")[-1] for l in r.stdout.strip().splitlines()[1:]], ["limit", "sat"])
        r = run("bench", "--family", "pseudo-clique", "--params", "3-6", "--method", "exact")
        self.assertEqual([l.split(",")[3] for l in r.stdout.strip().splitlines()[1:]], ["2", "3", "4", "5"])
        out = self.json_ok("bench", "--report", "bench", "--family", "random-graph", "--params", "8,60",
                           "--method", "exact")
        self.assertEqual([row["verdict"] for row in out["rows"]][1], "limit")
        jsonschema.validate(out["report"], schema("report"))
        self.assertEqual(len(out["report"]["limits_hit"]), 1)

    def test_verify_paper(self):
        r = run("verify-paper", "--quick", "--only", "1")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertTrue(r.stdout.startswith("PASS [1]"))
        out = self.json_ok("verify-paper", "verify-paper", "--quick", "--only", "3")
        self.assertEqual(out["total"], 1)

    def test_report(self):
        f = self.file("ex1.dt", "d: T ; p ; q\n")
        a = self.json_ok("dl-solve", "--report", "dl", "solve", f)
        b = self.json_ok("dl-solve", "--report", "dl", "solve", f)
        jsonschema.validate(a["report"], schema("report"))
        self.assertEqual(a["report"]["fingerprint"], b["report"]["fingerprint"])
        g = self.file("ex2.dt", "d: T ; p ; r\n")
        c = self.json_ok("dl-solve", "--report", "dl", "solve", g)
        self.assertNotEqual(a["report"]["fingerprint"], c["report"]["fingerprint"])

    def test_exit_codes(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("tw", "compute").returncode, 2)
        self.assertEqual(run("dl", "solve", str(self.dir / "missing.dt")).returncode, 1)
        bad = self.file("bad.fs", "p &\n")
        r = run("--json", "fmt", "check-sat", bad)
        self.assertEqual(r.returncode, 1)
        err = json.loads(r.stdout)
        jsonschema.validate(err, schema("error"))
        self.assertEqual((err["error"]["line"], err["error"]["column"]), (1, 4))
        many = self.file("many.fs", " & ".join(f"x{i}" for i in range(30)) + "\n")
        r = run("--json", "fmt", "check-sat", many, env={"NMLKIT_LIMITS": "sat_atoms=10"})
        self.assertEqual(r.returncode, 3)
        self.assertEqual(json.loads(r.stdout)["error"]["kind"], "resource_limit")
        r = run("fmt", "check-sat", many, "--method", "dp")
        self.assertEqual(r.returncode, 0)
        r = run("fmt", "check-sat", many, env={"NMLKIT_LIMITS": "bogus=1"})
        self.assertNotEqual(r.returncode, 0)


if __name__ == "__main__":
    if len(sys.argv) < 3:
        sys.exit(__doc__)
    BINARY = sys.argv[1]
    SCHEMAS = Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
