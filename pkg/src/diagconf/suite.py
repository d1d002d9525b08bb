"""Verification suites: cases from a data file, each run in its own process.

A case runs in a fresh interpreter so that a wall-clock budget can be
enforced by killing it.  Reports keep declaration order regardless of the
order in which workers finish.
"""

from __future__ import annotations

import json
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from . import checks, corpus
from .complex import connected_components
from .homology import HomologyResult, abelianization, homology, pi1_presentation
from .localdim import local_homotopical_dimension
from .product import product_complex
from .quotient import braid_model
from .retract import delta_model, delta_model_size, minimal_delta_model, simplex_interval_model

SUITES = ("core", "paper", "stretch")
DEFAULT_BUDGET = {"core": 600, "paper": 600, "stretch": 3600}


@dataclass
class CaseResult:
    name: str
    status: str
    seconds: float
    detail: str
    provenance: str
    observed: object = None


def load_cases(path=None) -> list[dict]:
    if path is None:
        text = resources.files("diagconf").joinpath("data/cases.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)["cases"]


def _model(p: dict):
    X = corpus.builtin(p["X"]) if "X" in p else None
    builder = p["builder"]
    if builder == "delta":
        return delta_model(X, p["n"], p["d"], p.get("max_dim"))
    if builder == "minimal_delta":
        return minimal_delta_model(X, p["n"], p["d"], p.get("max_dim"))
    if builder == "braid":
        return braid_model(X, p["n"], p["d"], p.get("max_dim"))
    if builder == "interval":
        return simplex_interval_model(p["n"], p["d"])
    if builder == "raw":
        return X
    raise ValueError(f"unknown builder {builder!r}")


class BudgetExceeded(Exception):
    pass


def _guard_size(p: dict, top: int) -> None:
    limit = p.get("max_cells")
    if limit is None:
        return
    size = sum(delta_model_size(corpus.builtin(p["X"]), p["n"], p["d"], top))
    if size > limit:
        raise BudgetExceeded(f"model needs {size} cells, budget {limit}")


def evaluate(case: dict) -> tuple[bool, object, str]:
    """(passed, observed, detail) for one case, in the current process."""
    kind, p, expected = case["kind"], case["params"], case["expected"]
    if kind == "property":
        res = checks.PROPERTY_CHECKS[p["check"]]()
        return res.ok == expected, res.ok, res.detail
    if kind == "f_vector":
        f = product_complex(corpus.builtin(p["X"]), p["n"]).complex.f_vector()
        return f == expected, f, f"f-vector {f}"
    if kind == "components":
        W = delta_model(corpus.builtin(p["X"]), p["n"], p["d"]).complex
        comps = connected_components(W)
        acyclic = all(homology(c.as_complex(), reduced=True).is_zero() for c in comps)
        obs = {"count": len(comps), "acyclic": acyclic}
        return obs == expected, obs, f"{len(comps)} components, acyclic={acyclic}"
    if kind == "homology":
        h = homology(_model(p), p.get("up_to"), reduced=p.get("reduced", False))
        want = HomologyResult.from_groups(expected["betti"], expected["torsion"], p.get("reduced", False))
        return h == want, h.to_json(), f"betti {h.betti} torsion {h.torsion}"
    if kind == "abelianization":
        rank, tors = abelianization(pi1_presentation(_model(p)))
        obs = {"rank": rank, "torsion": list(tors)}
        return obs == expected, obs, f"rank {rank} torsion {tors}"
    if kind == "localdim":
        ld = local_homotopical_dimension(corpus.builtin(p["X"]))
        ok = ld.r == expected and ld.combinatorial_r == expected
        return ok, ld.r, f"r={ld.r} combinatorial={ld.combinatorial_r} witness={ld.witness}"
    if kind == "theorem_1_1":
        res = checks.theorem_1_1_check(corpus.builtin(p["X"]), p["n"], p["d"], p.get("max_dim", 2))
        return res.ok == expected, res.ok, res.detail
    if kind == "theorem_1_2":
        X = corpus.builtin(p["X"])
        if p.get("method", "lazy") == "lazy":
            r = local_homotopical_dimension(X).r
            _guard_size(p, min(r * p["d"] + 2 * p["d"] - 2, p.get("budget_dim", 99)) + 1)
        res = checks.theorem_1_2_check(X, p["n"], p["d"], p.get("budget_dim"), p.get("method", "lazy"))
        return res.ok == expected, res.ok, res.detail
    if kind == "model_agreement":
        X, k = corpus.builtin(p["X"]), p["up_to"]
        a = homology(delta_model(X, p["n"], p["d"], k + 1), k)
        b = homology(minimal_delta_model(X, p["n"], p["d"], k + 1), k)
        return (a == b) == expected, a.to_json(), f"W {a.betti}/{a.torsion}, minimal {b.betti}/{b.torsion}"
    raise ValueError(f"unknown case kind {kind!r}")


def _worker(case: dict) -> dict:
    t = time.perf_counter()
    try:
        ok, observed, detail = evaluate(case)
        status = "pass" if ok else "FAIL"
    except BudgetExceeded as exc:
        status, observed, detail = "skipped (budget)", None, str(exc)
    except Exception as exc:  # reported, not raised: one case must not sink the suite
        status, observed, detail = "FAIL", None, f"{type(exc).__name__}: {exc}"
    return {"status": status, "observed": observed, "detail": detail, "seconds": time.perf_counter() - t}


def run_case(case: dict, timeout: float) -> CaseResult:
    t = time.perf_counter()
    if timeout <= 0:
        return CaseResult(case["name"], "skipped (budget)", 0.0, "suite budget exhausted", case["provenance"])
    try:
        proc = subprocess.run(
            [sys.executable, "-m", "diagconf.suite", "--worker"],
            input=json.dumps(case), capture_output=True, text=True, timeout=timeout,
        )
    except subprocess.TimeoutExpired:
        return CaseResult(case["name"], "skipped (budget)", time.perf_counter() - t,
                          f"exceeded {timeout:.0f} s", case["provenance"])
    if proc.returncode != 0:
        tail = (proc.stderr.strip().splitlines() or ["no output"])[-1]
        return CaseResult(case["name"], "FAIL", time.perf_counter() - t,
                          f"worker exited with {proc.returncode}: {tail}", case["provenance"])
    out = json.loads(proc.stdout)
    return CaseResult(case["name"], out["status"], out["seconds"], out["detail"], case["provenance"], out["observed"])


@dataclass
class SuiteReport:
    suite: str
    results: list[CaseResult]

    @property
    def ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.results)

    def table(self) -> str:
        width = max([len(r.name) for r in self.results] + [4])
        lines = [f"{'case':<{width}}  status            seconds  detail"]
        for r in self.results:
            lines.append(f"{r.name:<{width}}  {r.status:<16}  {r.seconds:7.2f}  {r.detail}")
            if r.status == "FAIL":
                lines.append(f"{'':<{width}}  expected value from: {r.provenance}")
        counts = {s: sum(1 for r in self.results if r.status == s) for s in ("pass", "FAIL", "skipped (budget)")}
        lines.append(f"{self.suite}: {counts['pass']} passed, {counts['FAIL']} failed, "
                     f"{counts['skipped (budget)']} skipped")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "results": [asdict(r) for r in self.results]}


def run_suite(suite: str, jobs: int = 1, budget: float | None = None, cases_path=None,
              only: list[str] | None = None) -> SuiteReport:
    """Run every case of a suite; ``budget`` is a wall-clock ceiling for the whole run."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    cases = [c for c in load_cases(cases_path) if c["suite"] == suite]
    if only:
        cases = [c for c in cases if c["name"] in only]
    total = DEFAULT_BUDGET[suite] if budget is None else budget
    deadline = time.monotonic() + total

    def go(case):
        return run_case(case, min(case["budget"], deadline - time.monotonic()))

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(go, cases))
    return SuiteReport(suite, results)


def _worker_main() -> None:
    case = json.loads(sys.stdin.read())
    json.dump(_worker(case), sys.stdout)


if __name__ == "__main__" and "--worker" in sys.argv:
    _worker_main()
