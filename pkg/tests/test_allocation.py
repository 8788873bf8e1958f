import itertools
import json

import numpy as np
import pytest

from ecsa import (
    AllocationObjective,
    Assignment,
    RandomSource,
    decode,
    fitness,
    load_instance,
    load_instance_csv,
    optimal_assignment,
    synth_instance,
)
from ecsa.allocation import instance_from_records, save_instance, write_assignment_csv


def records(coords, prefix):
    return [{"id": f"{prefix}{i}", "x": x, "y": y} for i, (x, y) in enumerate(coords)]


def square_instance():
    # collinear points give the exact distance matrix [[1, 2], [4, 3]]
    blocks = records([(0.0, 0.0), (5.0, 0.0)], "b")
    areas = [
        {"id": "a0", "x": 1.0, "y": 0.0},
        {"id": "a1", "x": 2.0, "y": 0.0},
    ]
    return instance_from_records(blocks, areas)


class TestLoadValidate:
    def test_roundtrip_json(self, tmp_path):
        instance = synth_instance(50, 11, seed=1)
        path = tmp_path / "instance.json"
        save_instance(instance, path)
        loaded = load_instance(path)
        assert loaded.n_blocks == 50 and loaded.n_areas == 11
        assert loaded.distance.shape == (50, 11)
        assert np.allclose(loaded.distance, instance.distance, atol=1e-12)

    def test_identical_coordinates_zero_distance(self):
        instance = instance_from_records(
            [{"id": "b", "x": 0.25, "y": 0.75}], [{"id": "a", "x": 0.25, "y": 0.75}]
        )
        assert instance.distance.tolist() == [[0.0]]

    def test_missing_areas_section(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"blocks": [{"id": "b", "x": 0, "y": 0}]}))
        with pytest.raises(ValueError, match="areas"):
            load_instance(path)

    def test_duplicate_id_reports_row(self):
        with pytest.raises(ValueError, match="record 1"):
            instance_from_records(
                [{"id": "b", "x": 0, "y": 0}, {"id": "b", "x": 1, "y": 1}],
                [{"id": "a", "x": 0, "y": 0}],
            )

    def test_non_finite_coordinates_rejected(self):
        with pytest.raises(ValueError, match="non-finite"):
            instance_from_records(
                [{"id": "b", "x": float("nan"), "y": 0}], [{"id": "a", "x": 0, "y": 0}]
            )

    def test_csv_loader(self, tmp_path):
        blocks = tmp_path / "blocks.csv"
        areas = tmp_path / "areas.csv"
        blocks.write_text("id,x,y\nb0,0.0,0.0\nb1,1.0,1.0\n")
        areas.write_text("id,x,y\na0,0.5,0.5\n")
        instance = load_instance_csv(blocks, areas)
        assert instance.n_blocks == 2 and instance.n_areas == 1

    def test_csv_missing_columns(self, tmp_path):
        blocks = tmp_path / "blocks.csv"
        blocks.write_text("id,lon,lat\nb0,0,0\n")
        areas = tmp_path / "areas.csv"
        areas.write_text("id,x,y\na0,0,0\n")
        with pytest.raises(ValueError, match="id,x,y"):
            load_instance_csv(blocks, areas)

    def test_distance_recomputable_from_coordinates(self):
        instance = synth_instance(12, 4, seed=9)
        deltas = instance.block_xy[:, None, :] - instance.area_xy[None, :, :]
        recomputed = np.sqrt((deltas**2).sum(axis=2))
        assert np.allclose(recomputed, instance.distance, rtol=1e-9)


class TestFitness:
    def test_single_pair(self):
        instance = instance_from_records(
            [{"id": "b", "x": 0.0, "y": 0.0}], [{"id": "a", "x": 3.2, "y": 0.0}]
        )
        assignment = Assignment(np.array([[1]]))
        assert fitness(instance, assignment) == pytest.approx(3.2, rel=1e-12)

    def test_identity_assignment_by_hand(self):
        instance = square_instance()
        assert np.allclose(instance.distance, [[1.0, 2.0], [4.0, 3.0]], atol=1e-12)
        identity = Assignment(np.eye(2, dtype=int))
        assert fitness(instance, identity) == pytest.approx(4.0, rel=1e-12)

    def test_nearest_assignment_is_column_minimum_sum(self):
        instance = synth_instance(20, 5, seed=4)
        assignment, value = optimal_assignment(instance)
        assert value == pytest.approx(instance.distance.min(axis=1).sum(), rel=1e-12)

    def test_invalid_assignment_rejected(self):
        with pytest.raises(ValueError):
            Assignment(np.array([[1, 1], [0, 0]]))
        with pytest.raises(ValueError):
            Assignment(np.array([[2, 0], [0, 1]]))

    def test_shape_mismatch_rejected(self):
        instance = square_instance()
        with pytest.raises(ValueError):
            fitness(instance, Assignment(np.eye(3, dtype=int)))

    def test_scale_equivariance(self):
        base = synth_instance(15, 4, seed=6)
        factor = 3.5
        scaled = instance_from_records(
            [
                {"id": i, "x": factor * x, "y": factor * y}
                for i, (x, y) in zip(base.block_ids, base.block_xy)
            ],
            [
                {"id": i, "x": factor * x, "y": factor * y}
                for i, (x, y) in zip(base.area_ids, base.area_xy)
            ],
        )
        assignment, base_value = optimal_assignment(base)
        scaled_assignment, scaled_value = optimal_assignment(scaled)
        assert scaled_value == pytest.approx(factor * base_value, rel=1e-12)
        assert np.array_equal(assignment.onehot, scaled_assignment.onehot)


class TestDecode:
    def test_argmax_row(self):
        instance = instance_from_records(
            records([(0, 0)], "b"), records([(0, 0), (1, 0), (2, 0)], "a")
        )
        assignment = decode(np.array([0.1, 0.9, 0.3]), instance)
        assert assignment.onehot.tolist() == [[0, 1, 0]]

    def test_tie_breaks_to_lowest_index(self):
        instance = instance_from_records(
            records([(0, 0)], "b"), records([(0, 0), (1, 0), (2, 0)], "a")
        )
        assignment = decode(np.array([0.5, 0.5, 0.2]), instance)
        assert assignment.onehot.tolist() == [[1, 0, 0]]

    def test_all_zero_position(self):
        instance = synth_instance(5, 3, seed=0)
        assignment = decode(np.zeros(15), instance)
        assert np.all(assignment.area_index == 0)

    def test_row_sums_always_one(self):
        instance = synth_instance(8, 4, seed=2)
        rng = RandomSource(3)
        for _ in range(100):
            assignment = decode(rng.uniform(0.0, 1.0, 32), instance)
            assert np.all(assignment.onehot.sum(axis=1) == 1)

    def test_length_mismatch(self):
        instance = synth_instance(5, 3, seed=0)
        with pytest.raises(ValueError):
            decode(np.zeros(14), instance)


class TestOptimalAssignment:
    def test_two_by_two_matches_enumeration(self):
        instance = square_instance()
        _, best = optimal_assignment(instance)
        values = []
        for choice in itertools.product(range(2), repeat=2):
            assignment = Assignment.from_indices(list(choice), 2)
            values.append(fitness(instance, assignment))
        assert best == pytest.approx(min(values), rel=1e-12)
        assert best == pytest.approx(4.0, rel=1e-12)  # b0->a0, b1->a1

    def test_single_area_forces_column_sum(self):
        instance = synth_instance(10, 1, seed=5)
        _, value = optimal_assignment(instance)
        assert value == pytest.approx(instance.distance.sum(), rel=1e-12)

    def test_equidistant_tie_to_lowest_index(self):
        instance = instance_from_records(
            [{"id": "b", "x": 0.0, "y": 0.0}],
            [{"id": "a0", "x": 1.0, "y": 0.0}, {"id": "a1", "x": -1.0, "y": 0.0}],
        )
        assignment, _ = optimal_assignment(instance)
        assert assignment.area_index.tolist() == [0]

    def test_oracle_dominates_1000_random_assignments(self):
        instance = synth_instance(30, 7, seed=8)
        _, best = optimal_assignment(instance)
        rng = RandomSource(11)
        for _ in range(1000):
            indices = rng.integers(7, size=30)
            value = fitness(instance, Assignment.from_indices(indices, 7))
            assert best <= value + 1e-12


class TestSynthInstance:
    def test_default_shape_and_decision_space(self):
        instance = synth_instance(50, 11, seed=3)
        assert instance.decision_dim == 550
        assert instance.search_box.dim == 550

    def test_unit_square_coordinates(self):
        instance = synth_instance(30, 5, seed=1)
        assert np.all(instance.block_xy >= 0) and np.all(instance.block_xy < 1)
        assert np.all(instance.area_xy >= 0) and np.all(instance.area_xy < 1)

    def test_deterministic_in_seed(self):
        a = synth_instance(10, 3, seed=42)
        b = synth_instance(10, 3, seed=42)
        assert np.array_equal(a.block_xy, b.block_xy)
        assert np.array_equal(a.distance, b.distance)

    def test_single_pair_instance(self):
        instance = synth_instance(1, 1, seed=0)
        _, value = optimal_assignment(instance)
        assert value == pytest.approx(instance.distance[0, 0], rel=1e-15)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            synth_instance(0, 3, seed=0)


class TestAllocationObjective:
    def test_batch_matches_single(self):
        instance = synth_instance(12, 5, seed=7)
        objective = AllocationObjective(instance)
        rng = RandomSource(9)
        X = rng.uniform(0.0, 1.0, (20, 60))
        batch = objective.evaluate_many(X)
        singles = [objective(x) for x in X]
        assert np.allclose(batch, singles, rtol=0, atol=0)

    def test_assignment_csv(self, tmp_path):
        instance = square_instance()
        assignment, value = optimal_assignment(instance)
        path = tmp_path / "assignment.csv"
        write_assignment_csv(instance, assignment, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "block_id,area_id,distance"
        assert len(lines) == 4  # header + 2 blocks + total row
        assert lines[-1].startswith("TOTAL")
        assert float(lines[-1].split(",")[-1]) == pytest.approx(value, rel=1e-12)
