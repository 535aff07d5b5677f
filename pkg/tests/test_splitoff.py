"""The split-off construction: gadget, pipeline stages, extraction, certificates."""

import itertools

import pytest

from hypersplit import (
    Merge,
    Trim,
    UnknownVertexError,
    apply_op,
    build_gadget,
    complete_split_off,
    extract_h_star,
    extract_op_log,
    hypergraph_equal,
    incidence_graph,
    oracle_lambda,
    replay,
    run_pipeline,
)
from conftest import corpus_hypergraph, hypergraph

# Degree-5 instance whose pipeline both deletes gadget edges (three hyperedges
# end up plainly trimmed) and keeps a merge chain; frozen from the generator.
FIG_SHAPE_EDGES = [
    {0, 1, 3},
    {0, 1, 3},
    {1, 2},
    {0, 2},
    {1, 3},
    {0, 1, 2},
    {1, 3},
    {0, 2, 3},
    {0, 1, 2},
]
FIG_SHAPE_S = 2


def two_star():
    # {{s,a},{s,b}} with s=2, a=0, b=1
    return hypergraph([{2, 0}, {2, 1}])


class TestBuildGadget:
    def test_degree_zero_strips_s_only(self):
        h = hypergraph([{0, 1}], extra_vertices=[9])
        inc = incidence_graph(h)
        gadget = build_gadget(h, 9)
        s_node = inc.vertex_node[9]
        assert gadget.clique == ()
        assert gadget.attachments == ()
        assert gadget.instance.graph.vertices == inc.instance.graph.vertices - {s_node}
        assert dict(gadget.instance.graph.edges) == dict(inc.instance.graph.edges)

    def test_degree_one_has_no_clique_edges(self):
        h = hypergraph([{9, 0, 1}])
        gadget = build_gadget(h, 9)
        assert len(gadget.clique) == 1
        (leaf,) = gadget.clique
        assert gadget.instance.graph.degree(leaf) == 1

    def test_degree_five_builds_complete_clique(self):
        h = hypergraph(FIG_SHAPE_EDGES)
        gadget = build_gadget(h, FIG_SHAPE_S)
        assert len(gadget.clique) == 5
        clique = set(gadget.clique)
        # complete graph among the gadget vertices
        internal = [
            (a, b) for a, b in gadget.instance.graph.edges.values() if a in clique and b in clique
        ]
        assert len(internal) == 10
        assert len(set(internal)) == 10
        # every incident hyperedge node hangs off exactly one gadget vertex
        inc = incidence_graph(h)
        for eid, holder in gadget.attachments:
            node = inc.edge_node[eid]
            assert gadget.instance.graph.neighbors(node) & clique == {holder}
        assert sorted(e for e, _ in gadget.attachments) == sorted(h.incident(FIG_SHAPE_S))

    def test_gadget_vertices_are_nonterminals(self):
        h = two_star()
        gadget = build_gadget(h, 2)
        assert not set(gadget.clique) & gadget.instance.terminals

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertexError):
            build_gadget(two_star(), 42)


class TestRunPipeline:
    def test_two_star_hand_run(self):
        p = run_pipeline(two_star(), 2)
        # the clique edge cannot be deleted (it carries the only a-b route)
        assert len(p.s2) == 1
        assert p.deleted_edges == ()
        assert p.f0 == ()
        assert list(p.fa.values()) == [(0, 1)]
        g4 = p.stage("G4").instance
        nonterminals = sorted(g4.graph.vertices - g4.terminals)
        assert len(nonterminals) == 1
        assert g4.graph.neighbors(nonterminals[0]) == g4.terminals

    def test_degree_zero_degenerates(self):
        h = hypergraph([{0, 1}], extra_vertices=[9])
        p = run_pipeline(h, 9)
        g0 = p.stage("G0").instance
        g4 = p.stage("G4").instance
        s_node = p.incidence.vertex_node[9]
        assert g4.graph.vertices == g0.graph.vertices - {s_node}
        assert dict(g4.graph.edges) == dict(g0.graph.edges)
        assert p.s2 == () and p.f0 == () and not p.fa

    def test_fig_shape_deletes_and_merges(self):
        p = run_pipeline(hypergraph(FIG_SHAPE_EDGES), FIG_SHAPE_S)
        assert p.deleted_edges != ()
        assert p.f0 == (5, 7, 8)
        assert list(p.fa.values()) == [(2, 3)]

    def test_stage_tables_all_equal(self):
        for trial in range(25):
            h = corpus_hypergraph(trial, max_n=6, max_m=8)
            s = sorted(h.vertices)[trial % len(h.vertices)]
            p = run_pipeline(h, s, certify=True)
            reference = p.stage("G0").table.restrict(p.stage("G1").instance.terminals)
            for stage in p.stages[1:]:
                assert stage.table == reference

    def test_certify_off_skips_tables(self):
        p = run_pipeline(two_star(), 2, certify=False)
        assert all(stage.table is None for stage in p.stages)
        assert not p.certified

    def test_stage_tables_match_hypergraph_tables(self):
        from hypersplit import conn_table_hyper

        for trial in range(20):
            h = corpus_hypergraph(trial, max_n=6, max_m=8)
            s = sorted(h.vertices)[trial % len(h.vertices)]
            res = complete_split_off(h, s, certify=True)
            p = res.pipeline
            rest = h.vertices - {s}
            g0_table = p.stage("G0").table.remapped(p.incidence.node_vertex)
            assert g0_table == conn_table_hyper(h)
            assert g0_table.restrict(rest) == res.certificate.before
            g4_table = p.stage("G4").table.remapped(p.incidence.node_vertex)
            assert g4_table == conn_table_hyper(res.h_star).restrict(rest)


class TestExtraction:
    def test_two_star_extracts_single_edge(self):
        p = run_pipeline(two_star(), 2)
        h_star = extract_h_star(p)
        assert hypergraph_equal(h_star, hypergraph([{0, 1}], extra_vertices=[2]))

    def test_untouched_hyperedges_keep_ids(self):
        h = hypergraph([{9, 0}, {0, 1}, {1, 2}])
        p = run_pipeline(h, 9)
        h_star = extract_h_star(p)
        assert h_star.hyperedges[1] == h.hyperedges[1]
        assert h_star.hyperedges[2] == h.hyperedges[2]

    def test_empty_nonterminal_side(self):
        h = hypergraph([{9, 0}])
        assert extract_h_star(run_pipeline(h, 9)).num_edges == 0

    def test_two_star_log(self):
        h = two_star()
        p = run_pipeline(h, 2)
        assert extract_op_log(p, h, 2) == (Merge(keep=0, absorb=1), Trim(edge=0))

    def test_degree_one_log_is_single_trim(self):
        h = hypergraph([{9, 0, 1}])
        p = run_pipeline(h, 9)
        assert extract_op_log(p, h, 9) == (Trim(edge=0),)

    def test_fig_shape_log(self):
        h = hypergraph(FIG_SHAPE_EDGES)
        p = run_pipeline(h, FIG_SHAPE_S)
        assert extract_op_log(p, h, FIG_SHAPE_S) == (
            Trim(5),
            Trim(7),
            Trim(8),
            Merge(keep=2, absorb=3),
            Trim(2),
        )

    def test_log_rejects_foreign_hypergraph(self):
        p = run_pipeline(two_star(), 2)
        with pytest.raises(ValueError):
            extract_op_log(p, hypergraph([{2, 0, 1}]), 2)


class TestCompleteSplitOff:
    def test_two_star(self):
        res = complete_split_off(two_star(), 2)
        assert hypergraph_equal(res.h_star, hypergraph([{0, 1}], extra_vertices=[2]))
        assert res.log == (Merge(keep=0, absorb=1), Trim(edge=0))
        assert res.certificate.ok and res.certificate.pairs_checked == 1

    def test_degree_zero_is_identity(self):
        h = hypergraph([{0, 1}], extra_vertices=[9])
        res = complete_split_off(h, 9)
        assert hypergraph_equal(res.h_star, h)
        assert res.log == ()

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertexError):
            complete_split_off(two_star(), 42)

    def test_pipeline_only_kept_when_certified(self):
        assert complete_split_off(two_star(), 2, certify=True).pipeline is not None
        assert complete_split_off(two_star(), 2, certify=False).pipeline is None

    def test_random_instances_certify_and_agree_with_oracle(self):
        for trial in range(60):
            h = corpus_hypergraph(trial, max_n=6, max_m=8)
            s = sorted(h.vertices)[trial % len(h.vertices)]
            res = complete_split_off(h, s)
            assert res.h_star.degree(s) == 0
            assert res.h_star.num_edges <= h.num_edges
            assert hypergraph_equal(replay(h, s, res.log), res.h_star)
            rest = sorted(h.vertices - {s})
            for u, v in itertools.combinations(rest, 2):
                want = oracle_lambda(h, u, v)
                assert oracle_lambda(res.h_star, u, v) == want
                assert res.certificate.before.get(u, v) == want

    def test_every_merge_is_almost_disjoint_when_applied(self):
        for trial in range(60):
            h = corpus_hypergraph(trial, max_n=6, max_m=8)
            s = sorted(h.vertices)[trial % len(h.vertices)]
            res = complete_split_off(h, s, certify=False)
            cur = h
            for op in res.log:
                if isinstance(op, Merge):
                    assert cur.members(op.keep) & cur.members(op.absorb) == {s}
                cur = apply_op(cur, s, op)
            assert hypergraph_equal(cur, res.h_star)

    def test_hyperedges_away_from_s_survive_unchanged(self):
        for trial in range(40):
            h = corpus_hypergraph(trial, max_n=6, max_m=8)
            s = sorted(h.vertices)[trial % len(h.vertices)]
            res = complete_split_off(h, s, certify=False)
            for eid in h.edge_ids():
                if s not in h.hyperedges[eid]:
                    assert res.h_star.hyperedges[eid] == h.hyperedges[eid]


class TestDegenerateShapes:
    """deg(s) in {0,1}, duplicates through s, and singleton-dropping trims."""

    CASES = [
        hypergraph([{0, 1}, {1, 2}], extra_vertices=[9]),     # deg(s)=0
        hypergraph([{9, 0, 1}]),                              # deg(s)=1, trim keeps edge
        hypergraph([{9, 0}]),                                 # deg(s)=1, trim drops singleton
        hypergraph([{9, 0}, {9, 0}]),                         # duplicate {s,v} twice
        hypergraph([{9, 0, 1}, {9, 0, 1}]),                   # duplicate triple through s
        hypergraph([{9, 0}, {0, 1}]),                         # singleton drop beside a real edge
    ]

    @pytest.mark.parametrize("h", CASES, ids=range(len(CASES)))
    def test_certified_splitoff(self, h):
        res = complete_split_off(h, 9, certify=True)
        assert res.h_star.degree(9) == 0
        assert res.certificate.ok
        assert hypergraph_equal(replay(h, 9, res.log), res.h_star)
        reference = res.pipeline.stage("G0").table.restrict(
            res.pipeline.stage("G1").instance.terminals
        )
        for stage in res.pipeline.stages[1:]:
            assert stage.table == reference
        rest = sorted(h.vertices - {9})
        for u, v in itertools.combinations(rest, 2):
            assert oracle_lambda(res.h_star, u, v) == oracle_lambda(h, u, v)
