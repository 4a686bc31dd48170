import json
import subprocess
import sys

import pytest

from g7hurwitz.cache import CACHE_VERSION, ArtifactCache, CacheManifest
from g7hurwitz.cli import main


@pytest.fixture
def run(tmp_path, capsys):
    cache = tmp_path / "cache"

    def go(*argv, cache_on=True):
        flags = ["--cache-dir", str(cache)] + ([] if cache_on else ["--no-cache"])
        code = main([*flags, *argv])
        out, err = capsys.readouterr()
        return code, out, err

    go.cache = cache
    return go


def payload(out):
    return json.loads(out)


def test_group_info_g7(run):
    code, out, _ = run("group-info", "G7")
    data = payload(out)
    assert code == 0 and data["order"] == 144 and data["reflections"] == 22
    assert {c["label"]: c["size"] for c in data["classes"]} == {"S": 6, "R1": 4, "R1^-1": 4, "R2": 4, "R2^-1": 4}
    assert data["generators"] == ["s", "t", "u"]


def test_group_info_g422_and_g5(run):
    data = payload(run("group-info", "G422")[1])
    assert data["order"] == 16 and [(c["label"], c["size"]) for c in data["classes"]] == [("S1", 2), ("S2", 2), ("S3", 2)]
    data = payload(run("group-info", "G5")[1])
    assert data["order"] == 72 and data["reflections"] == 16


def test_group_info_iso_label_lists_copies(run):
    data = payload(run("group-info", "G4")[1])
    assert [d["name"] for d in data] == ["G4a", "G4b"]


def test_group_info_unknown(run):
    code, _, err = run("group-info", "G8")
    assert code == 2 and payload(err)["error"] == "unknown-group"


@pytest.mark.parametrize(
    "fact, code, size",
    [("s", 0, 1), ("t, t", 0, 1), ("t, s*t*s", 0, 3)],
)
def test_orbit(run, fact, code, size):
    got, out, _ = run("orbit", fact)
    assert got == code and payload(out)["size"] == size


def test_orbit_support(run):
    data = payload(run("orbit", "t, s*t*s")[1])
    assert len(data["support"]) == 3 and data["truncated"] is False


@pytest.mark.parametrize("fact, kind", [("t, x", "parse-error"), ("t*u", "not-a-reflection"), ("t,,u", "parse-error")])
def test_orbit_bad_input(run, fact, kind):
    code, _, err = run("orbit", fact)
    assert code == 2 and payload(err)["error"] == kind


def test_orbit_truncated(run):
    code, out, _ = run("orbit", "t, u, s, t, u", "--cap", "7")
    assert code == 3 and payload(out)["truncated"] is True


def test_decide(run):
    code, out, _ = run("decide", "t, u, s", "t, u, s")
    assert code == 0 and payload(out)["equivalent"]
    code, out, _ = run("decide", "t, t^-1", "u, u^-1")
    assert code == 1 and payload(out)["reason"] == "different-subgroup"
    code, out, _ = run("decide", "--mode", "bfs", "t, s*t*s", "s*t*s, s*u*t*u^-1*s")
    assert code == 0 and payload(out)["certified_by"] == "orbit-bfs"
    code, _, _ = run("decide", "t", "q")
    assert code == 2


def test_normalize(run):
    code, _, err = run("normalize", "t, u")
    assert code == 2 and payload(err)["error"] == "not-g4"
    data = payload(run("normalize", "t, s*t*s, s*t*s, t, t, s*t*s, t, t, t")[1])
    assert data["validated"] and data["key"]["group"] == "G4b"


def test_normalize_catalog_instance_unchanged(run):
    data = payload(run("normalize", "t, t, t, t^-1, t, s*t*s, t, t^-1, t")[1])
    assert data["source"] == "catalog"
    words = ", ".join(data["tuple"])
    again = payload(run("normalize", words)[1])
    assert again["tuple"] == data["tuple"] and again["source"] == "catalog"


def test_normalize_short_input_has_fallback_flag(run):
    # t and s*t^-1*s generate G4 and multiply to a non-Coxeter element
    data = payload(run("normalize", "t, s*t^-1*s")[1])
    assert data["source"] == "orbit-bfs" and "fallback" in data


def test_verify_generation(run):
    code, out, _ = run("verify", "generation")
    data = payload(out)
    assert code == 0 and data["ok"]
    gen = data["reports"][0]["details"]
    assert gen["g422_generation"]["generate"] == 27 and gen["g7_generation"]["generate"] == 384


def test_verify_census(run):
    code, out, _ = run("verify", "census")
    assert code == 0 and payload(out)["reports"][0]["details"]["counts"]["Z3"] == 8


def test_verify_theorem_g4(run):
    code, out, _ = run("verify", "theorem", "--group", "G4", "--max-len", "5")
    reports = payload(out)["reports"]
    assert code == 0 and len(reports) == 10
    assert {r["group"] for r in reports} == {"G4a", "G4b"}
    assert all(r["partitions_agree"] for r in reports)


def test_verify_budget(run):
    code, _, err = run("verify", "theorem", "--group", "G7", "--max-len", "5", "--budget", "1000000")
    assert code == 3 and payload(err)["error"] == "budget-exceeded"


def test_verify_jobs_do_not_change_output(run):
    one = run("verify", "theorem", "--group", "G422", "--max-len", "4")[1]
    two = run("verify", "theorem", "--group", "G422", "--max-len", "4", "--jobs", "2")[1]
    assert one == two


def test_census_and_lattice(run):
    data = payload(run("census")[1])
    assert data["counts"]["G4"] == 2 and len(data["subgroups"]) == 31
    data = payload(run("lattice")[1])
    assert len(data["nodes"]) == 31 and data["dot"].startswith("graph")
    code, out, _ = run("lattice", "--format", "dot")
    assert code == 0 and out == data["dot"]


def test_pretty_output(run):
    code, out, _ = run("--pretty", "group-info", "G422")
    assert code == 0 and out.startswith("name: G422")


@pytest.mark.parametrize(
    "argv",
    [
        ("group-info", "G6a"),
        ("census",),
        ("lattice",),
        ("orbit", "t, u, s"),
        ("normalize", "t, s*t*s, t, t, s*t*s, t, t, t"),
        ("verify", "catalog", "--max-len", "9"),
    ],
)
def test_cache_does_not_change_output(run, argv):
    cold = run(*argv, cache_on=False)
    warm1 = run(*argv)
    warm2 = run(*argv)
    assert cold == warm1 == warm2


def test_cache_manifest_and_tamper(run):
    run("census")
    man = CacheManifest.load(run.cache / "manifest.json")
    assert man.version == CACHE_VERSION and set(man.entries) == {"group_table", "census"}
    cache = ArtifactCache(run.cache)
    cache.group_table()
    assert cache.hits == ["group_table"]
    # a corrupted artifact fails its hash and is rebuilt
    path = run.cache / man.entries["census"]["path"]
    path.write_text(path.read_text().replace("G7", "G8"))
    fresh = ArtifactCache(run.cache)
    host = fresh.group_table()
    data = fresh.census(host)
    assert "census" not in fresh.hits and data["nodes"][-1]["name"] == "G7"
    assert ArtifactCache(run.cache).census(host) == data


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "g7hurwitz", "--cache-dir", str(tmp_path), "orbit", "s"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["size"] == 1
