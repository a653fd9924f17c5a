"""End-to-end smoke checks for the python bindings."""

import math

import pytest

import scriptdag as sd


def chain(scenario, texts):
    g = sd.ScriptGraph(scenario)
    ids = [g.add_event(t) for t in texts]
    for a, b in zip(ids, ids[1:]):
        g.add_edge(a, b)
    return g


def test_graph_construction_and_validation():
    g = sd.ScriptGraph("bake a cake")
    a = g.add_event("preheat oven", ("minutes", 300.0))
    b = g.add_event("mix batter")
    c = g.add_event("bake")
    assert g.add_edge(a, c) == "added"
    assert g.add_edge(b, c) == "added"
    assert g.add_edge(a, c) == "redundant"
    assert len(g) == 3
    assert g.validate().ok
    assert g.events[0].duration == ("minutes", 300.0)
    assert g.max_degree() == 2
    with pytest.raises(sd.CycleError):
        g.add_edge(c, a)


def test_normalize_label():
    assert sd.normalize_label("  Mix   the Batter ") == "mix the batter"


def test_dot_round_trip():
    g = chain("make tea", ["boil water", "steep", "pour"])
    g.set_duration(0, ("minutes", 180.0))
    text = sd.emit_dot(g, scenario_comment=True, duration_comments=True)
    assert text == sd.emit_dot(sd.parse_dot(text), scenario_comment=True, duration_comments=True)
    assert sd.parse_dot(text) == g


def test_parse_lenient_recovers():
    text = 'digraph g {\n  s0 [label="a"]\n  s1 [label="b"];\n  s0 -> s1;\n  s1 -> s0;\n}\n'
    graph, warnings = sd.parse_lenient(text)
    assert graph.validate().ok
    assert any(w.code == "CYCLE_DROPPED" for w in warnings)
    with pytest.raises(sd.ParseError):
        sd.parse_dot("graph g {}")


def test_predict_edges_reconstructs_from_oracle_scores():
    gold = sd.ScriptGraph("assemble the kit")
    for text in ["unpack", "sort parts", "read manual", "build"]:
        gold.add_event(text)
    for src, dst in [(0, 1), (0, 2), (1, 3), (2, 3)]:
        gold.add_edge(src, dst)
    n = len(gold)
    reach = set(gold.closure())
    p = [[1.0 if (i, j) in reach else 0.0 for j in range(n)] for i in range(n)]
    predicted = sd.predict_edges([e.text for e in gold.events], p, scenario=gold.scenario)
    assert sorted(predicted.edges) == sorted(gold.edges)


def test_edge_prf_values():
    gold = chain("s", ["a", "b", "c", "d"])
    assert sd.edge_prf(gold, gold).f1 == 1.0
    swapped = sd.ScriptGraph.from_parts(
        "s", [sd.Event(i, t) for i, t in enumerate("abcd")], [(1, 0), (0, 2), (2, 3)]
    )
    score = sd.edge_prf(swapped, gold, match_by="id")
    assert math.isclose(score.f1, 1.0 / 3.0)
    precision, recall, f1 = tuple(score)
    assert (precision, recall) == (score.precision, score.recall)
    assert f1 == score.f1


def test_ged_and_limits():
    g1 = chain("s", ["a", "b"])
    g2 = chain("s", ["a", "c"])
    same = sd.ged(g1, g1)
    assert same.cost == 0.0
    one_rename = sd.ged(g1, g2)
    assert one_rename.cost == 1.0
    assert one_rename.script.breakdown()["v_rep"] == 1.0
    assert [op.kind for op in one_rename.script.ops] == ["V-Rep"]
    with pytest.raises(sd.SizeLimitError):
        sd.ged(chain("s", list("abcdefgh")), chain("s", list("hgfedcba")), max_exact_nodes=4)
    approx = sd.ged_approx(g1, g2, beam=16)
    assert approx.cost >= one_rename.cost


def test_corpus_round_trip_and_stats(tmp_path):
    lines = [
        '{"id":"r0","scenario":"bake a cake","source":"rocstories","split":"dev",'
        '"events":[{"id":0,"text":"preheat oven","duration":{"bucket":"minutes",'
        '"seconds_estimate":120.0}},{"id":1,"text":"bake"}],"edges":[[0,1]],'
        '"alt_edges":[[0,1]]}',
        "{not json",
        '{"id":"r1","scenario":"make tea","source":"descript","split":"dev",'
        '"events":[{"id":0,"text":"boil"},{"id":1,"text":"steep"},{"id":2,"text":"pour"}],'
        '"edges":[[0,1],[1,2]],"alt_edges":[[1,0],[2,1]]}',
    ]
    path = tmp_path / "corpus.jsonl"
    path.write_text("\n".join(lines) + "\n")

    corpus = sd.load_jsonl(path)
    assert len(corpus) == 2
    assert [bad.line for bad in corpus.invalid] == [2]
    assert corpus.invalid[0].code == "JSON_ERROR"
    assert corpus.records[0].graph().scenario == "bake a cake"

    assert sd.agreement_f1(corpus.records[0]).f1 == 1.0
    kept = sd.agreement_filter(corpus, threshold=65.0)
    assert [r.id for r in kept.kept] == ["r0"]
    assert [r.id for r in kept.rejected] == ["r1"]

    stats = sd.corpus_stats(corpus)
    assert stats.n_scripts == 2
    assert stats.mean_events == 2.5
    assert stats.by_split == {"dev": 2}
    assert stats.duration_hist == {"minutes": 1, "unknown": 1}
    assert '"n_scripts":2' in stats.to_json()

    out = tmp_path / "copy.jsonl"
    sd.save_jsonl(corpus, out)
    reloaded = sd.load_jsonl(out)
    assert reloaded.records == corpus.records


def test_random_baseline_determinism():
    events = [f"step {i}" for i in range(6)]
    one = sd.random_script(events, "s", kind="random-chain", seed=7)
    two = sd.random_script(events, "s", kind="random-chain", seed=7)
    assert one == two
    assert one.edge_count() == 5
    assert one.max_degree() == 1
    dag = sd.random_script(events, "s", kind="random-dag", p_branch=1.0, seed=7)
    assert dag.validate().ok


def test_corpus_report_shapes():
    gold = chain("s", ["a", "b", "c"])
    pairs = [sd.ScoredPair("demo", gold, [gold])]
    report = sd.corpus_report(pairs, ged=True)
    assert report.n_scripts == 1
    assert report.macro_prf.f1 == 1.0
    assert report.macro_ged == 0.0
    assert report.scripts[0].id == "demo"
    assert '"f1":100.0' in report.to_json()
    assert report.to_tsv().splitlines()[0].startswith("id\tF1\tP\tR\tEdit Dist")
