"""Radius solving and center placement on triangulated patches."""

import math
import random

import pytest

from conftest import random_patch, wheel_embedding, wheel_problem
from diskpack import (
    DegenerateTriangleError,
    Disk,
    EmbeddedGraph,
    Graph,
    InconsistentLayoutError,
    InvalidInputError,
    LayoutProblem,
    NonConvergenceError,
    UnsupportedInputError,
    angle_sum,
    extract_contact_graph,
    pack,
    place_centers,
    rotation_from_positions,
    solve_radii,
    verify_realization,
)
from diskpack.layout import HIGH_LABEL_WARNING


def wheel_radius_closed_form(n):
    # uniform tangency wheel: each hub angle is 2*asin(1/(1+rho)) = 2*pi/n
    return 1.0 / math.sin(math.pi / n) - 1.0


def triangle_problem(radii):
    g = Graph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))
    rotation = {"a": ("b", "c"), "b": ("c", "a"), "c": ("a", "b")}
    emb = EmbeddedGraph(g, rotation, frozenset({"a", "b", "c"}))
    return LayoutProblem(emb, dict(zip(("a", "b", "c"), radii)))


class TestLayoutProblem:
    def test_requires_boundary(self):
        emb = wheel_embedding(6)
        bare = EmbeddedGraph(emb.graph, emb.rotation, frozenset())
        with pytest.raises(InvalidInputError):
            LayoutProblem(bare, {})

    def test_requires_triangulated(self):
        g = Graph(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")))
        rotation = {"a": ("d", "b"), "b": ("c", "a"), "c": ("b", "d"), "d": ("c", "a")}
        emb = EmbeddedGraph(g, rotation, frozenset("abcd"))
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, {v: 1.0 for v in "abcd"})

    def test_radii_must_cover_boundary_exactly(self):
        emb = wheel_embedding(6)
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, {"b0": 1.0})
        radii = {v: 1.0 for v in emb.boundary}
        radii["hub"] = 1.0
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, radii)

    def test_radii_must_be_positive(self):
        emb = wheel_embedding(6)
        radii = {v: 1.0 for v in emb.boundary}
        radii["b3"] = 0.0
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, radii)

    def test_label_on_non_edge_rejected(self):
        emb = wheel_embedding(6)
        radii = {v: 1.0 for v in emb.boundary}
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, radii, {("b0", "b3"): 0.5})

    def test_tol_and_budget_validated(self):
        emb = wheel_embedding(6)
        radii = {v: 1.0 for v in emb.boundary}
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, radii, tol=0.0)
        with pytest.raises(InvalidInputError):
            LayoutProblem(emb, radii, max_iter=0)

    def test_interior_vertices(self):
        assert wheel_problem(6).interior_vertices == ("hub",)
        assert triangle_problem((1.0, 1.0, 1.0)).interior_vertices == ()


class TestAngleSum:
    def test_hexagonal_wheel_at_unit_radii_closes(self):
        problem = wheel_problem(6)
        radii = {v: 1.0 for v in problem.embedding.graph.vertices}
        assert angle_sum("hub", radii, problem) == pytest.approx(2.0 * math.pi, abs=1e-12)

    def test_square_wheel_at_unit_radii_is_240_degrees(self):
        problem = wheel_problem(4)
        radii = {v: 1.0 for v in problem.embedding.graph.vertices}
        got = angle_sum("hub", radii, problem)
        assert got == pytest.approx(math.radians(240.0), abs=1e-12)

    def test_boundary_vertex_rejected(self):
        problem = wheel_problem(6)
        radii = {v: 1.0 for v in problem.embedding.graph.vertices}
        with pytest.raises(InvalidInputError):
            angle_sum("b0", radii, problem)

    def test_unknown_vertex_rejected(self):
        problem = wheel_problem(6)
        with pytest.raises(InvalidInputError):
            angle_sum("zz", {}, problem)

    def test_flat_face_reports_the_face(self):
        # two spokes at 170 degrees shrink their sides below the rim length
        theta = math.radians(170.0)
        problem = wheel_problem(6, labels={("hub", "b0"): theta, ("hub", "b1"): theta})
        radii = {v: 1.0 for v in problem.embedding.graph.vertices}
        with pytest.raises(DegenerateTriangleError, match="face"):
            angle_sum("hub", radii, problem)


class TestSolveRadii:
    def test_hexagonal_wheel_gives_unit_hub(self):
        solution = solve_radii(wheel_problem(6))
        assert solution.radii["hub"] == pytest.approx(1.0, abs=1e-10)
        assert solution.residual <= 1e-10

    def test_square_wheel_matches_closed_form(self):
        solution = solve_radii(wheel_problem(4))
        assert solution.radii["hub"] == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-10)

    def test_wheels_match_closed_form(self):
        for n in (3, 4, 5, 6, 7, 9):
            solution = solve_radii(wheel_problem(n))
            assert solution.radii["hub"] == pytest.approx(wheel_radius_closed_form(n), abs=1e-9)

    def test_boundary_radii_pass_through(self):
        solution = solve_radii(wheel_problem(6, radius=2.5))
        for v in wheel_embedding(6).boundary:
            assert solution.radii[v] == 2.5

    def test_solution_scales_with_boundary(self):
        a = solve_radii(wheel_problem(5, radius=1.0)).radii["hub"]
        b = solve_radii(wheel_problem(5, radius=3.0)).radii["hub"]
        assert b == pytest.approx(3.0 * a, rel=1e-9)

    def test_uniform_30_degree_wheel_still_unit(self):
        emb = wheel_embedding(6)
        labels = {k: math.radians(30.0) for k in emb.graph.edge_keys()}
        solution = solve_radii(wheel_problem(6, labels=labels))
        assert solution.radii["hub"] == pytest.approx(1.0, abs=1e-10)
        assert solution.warnings == ()

    def test_initial_guess_is_only_a_start(self):
        problem = wheel_problem(6)
        for start in (0.01, 1.0, 50.0):
            solution = solve_radii(problem, {"hub": start})
            assert solution.radii["hub"] == pytest.approx(1.0, abs=1e-9)

    def test_bad_initial_rejected(self):
        with pytest.raises(InvalidInputError):
            solve_radii(wheel_problem(6), {"hub": -1.0})

    def test_two_starts_agree_on_random_patches(self):
        rng = random.Random(2024)
        for _ in range(6):
            problem = random_patch(rng, rng.randint(10, 20))
            ones = {v: 1.0 for v in problem.interior_vertices}
            wild = {v: rng.uniform(0.2, 5.0) for v in problem.interior_vertices}
            a = solve_radii(problem, ones)
            b = solve_radii(problem, wild)
            for v in problem.interior_vertices:
                assert a.radii[v] == pytest.approx(b.radii[v], abs=1e-8)
            assert a.residual <= problem.tol
            assert b.residual <= problem.tol

    def test_high_label_warns_and_degrades_gracefully(self):
        emb = wheel_embedding(6)
        labels = {("b0", "b1"): math.radians(100.0)}
        problem = wheel_problem(6, labels=labels)
        with pytest.warns(UserWarning, match="not guaranteed"):
            solution = solve_radii(problem)
        assert HIGH_LABEL_WARNING in solution.warnings
        assert solution.residual <= problem.tol

    def test_no_warning_at_90_degrees(self):
        labels = {("b0", "b1"): math.radians(90.0)}
        solution = solve_radii(wheel_problem(6, labels=labels))
        assert solution.warnings == ()

    def test_budget_exhaustion_reports_best_residual(self):
        rng = random.Random(5)
        problem = random_patch(rng, 18)
        assert problem.interior_vertices
        tight = LayoutProblem(
            problem.embedding, problem.boundary_radii, problem.labels, tol=1e-12, max_iter=1
        )
        with pytest.raises(NonConvergenceError) as info:
            solve_radii(tight)
        assert info.value.iterations == 1
        assert info.value.best_residual > 0.0

    def test_no_interior_is_trivial(self):
        solution = solve_radii(triangle_problem((1.0, 2.0, 3.0)))
        assert solution.iterations == 0
        assert solution.residual == 0.0


class TestPlaceCenters:
    def test_tangent_triangle_has_pythagorean_distances(self):
        problem = triangle_problem((1.0, 2.0, 3.0))
        disks, closure = place_centers(problem, solve_radii(problem).radii)
        assert closure == 0.0
        pos = {d.id: d.center for d in disks}
        assert abs(pos["a"] - pos["b"]) == pytest.approx(3.0, abs=1e-12)
        assert abs(pos["b"] - pos["c"]) == pytest.approx(5.0, abs=1e-12)
        assert abs(pos["a"] - pos["c"]) == pytest.approx(4.0, abs=1e-12)

    def test_two_disk_chain(self):
        g = Graph(("a", "b"), (("a", "b"),))
        emb = EmbeddedGraph(g, {"a": ("b",), "b": ("a",)}, frozenset({"a", "b"}))
        problem = LayoutProblem(emb, {"a": 1.0, "b": 2.0})
        disks, closure = place_centers(problem, {"a": 1.0, "b": 2.0})
        assert closure == 0.0
        assert abs(disks.by_id("a").center - disks.by_id("b").center) == pytest.approx(3.0, abs=1e-12)

    def test_hexagonal_wheel_layout(self):
        problem = wheel_problem(6)
        disks, closure = place_centers(problem, solve_radii(problem).radii)
        assert closure <= 1e-10
        hub = disks.by_id("hub").center
        for i in range(6):
            assert abs(disks.by_id(f"b{i}").center - hub) == pytest.approx(2.0, abs=1e-9)

    def test_orientation_follows_the_rotation_system(self):
        problem = wheel_problem(6)
        disks = pack(problem)
        pos = {d.id: d.center for d in disks}
        emb = problem.embedding
        rot = rotation_from_positions(emb.graph.vertices, emb.graph.edges, pos)
        for v in emb.graph.vertices:
            doubled = rot[v] + rot[v]
            k = len(emb.rotation[v])
            assert any(doubled[i:i + k] == emb.rotation[v] for i in range(k))

    def test_edge_lengths_respect_labels(self):
        rng = random.Random(77)
        problem = random_patch(rng, 16)
        solution = solve_radii(problem)
        disks, closure = place_centers(problem, solution.radii)
        assert closure <= 100.0 * problem.tol
        pos = {d.id: d.center for d in disks}
        for u, v in problem.embedding.graph.edge_keys():
            want = solution.radii[u] + solution.radii[v]
            assert abs(pos[u] - pos[v]) == pytest.approx(want, abs=1e-8)

    def test_inconsistent_radii_rejected(self):
        problem = wheel_problem(6)
        radii = {v: 1.0 for v in problem.embedding.graph.vertices}
        radii["hub"] = 2.0
        with pytest.raises(InconsistentLayoutError):
            place_centers(problem, radii)

    def test_vertex_joined_patches_unsupported(self):
        # two triangles sharing only a vertex: no face walk reaches both
        g = Graph(
            ("a", "b", "c", "d", "w"),
            (("w", "a"), ("w", "b"), ("a", "b"), ("w", "c"), ("w", "d"), ("c", "d")),
        )
        pos = {"w": 0j, "a": 2 + 1j, "b": 2 - 1j, "c": -2 - 1j, "d": -2 + 1j}
        rotation = rotation_from_positions(g.vertices, g.edges, pos)
        emb = EmbeddedGraph(g, rotation, frozenset(g.vertices))
        problem = LayoutProblem(emb, {v: 1.0 for v in g.vertices})
        with pytest.raises(UnsupportedInputError):
            place_centers(problem, {v: 1.0 for v in g.vertices})


class TestPack:
    def test_pack_realizes_its_own_contact_graph(self):
        rng = random.Random(31415)
        for n in (10, 14, 22):
            problem = random_patch(rng, n)
            disks = pack(problem)
            lg = extract_contact_graph(disks)
            assert lg.graph.edge_keys() == problem.embedding.graph.edge_keys()
            report = verify_realization(disks, lg, tol=1e-7)
            assert report.ok, report.defects

    def test_labeled_pack_round_trip(self):
        emb = wheel_embedding(6)
        labels = {k: math.radians(30.0) for k in emb.graph.edge_keys()}
        disks = pack(wheel_problem(6, labels=labels))
        lg = extract_contact_graph(disks)
        for k, theta in lg.labels.items():
            assert theta == pytest.approx(math.radians(30.0), abs=1e-8)
