"""
Tests for scene_model.py: CSV interchange, preprocessing, lagged designs, length statistics.
"""

# 🧩 Third-party libraries
import numpy as np
import pytest

# 🧠 First-party (project-specific)
from models.errors import SceneFormatError, EmptySceneDirectoryError, InsufficientSamplesError, CausalToolkitError
from models.scene_model import (TimeSeriesScene, Variant, load_scene_csv, save_scene_csv, load_scene_dir,
                                list_scene_files, moving_average, resample_linear, lagged_matrix,
                                lagged_design, scene_length_stats)


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_load_scene_csv_reads_header_and_rows(tmp_path):
    path = _write(tmp_path / "s1.csv", "c0.a,c1.a\n1.0,2.0\n3.5,-4\n")
    scene = load_scene_csv(path, 10.0)
    assert scene.scene_id == "s1"
    assert scene.variable_names == ("c0.a", "c1.a")
    assert scene.variant is Variant.ACCELERATION
    np.testing.assert_array_equal(scene.values, [[1.0, 2.0], [3.5, -4.0]])


def test_load_scene_csv_names_the_bad_row(tmp_path):
    path = _write(tmp_path / "bad.csv", "a,b\n1,2\n3,x\n")
    with pytest.raises(SceneFormatError) as info:
        load_scene_csv(path, 10.0)
    assert info.value.row == 3
    assert "row 3" in str(info.value)


@pytest.mark.parametrize("text", ["", "a,b\n", "a,b\n1,2,3\n", "a,b\n1,nan\n"])
def test_load_scene_csv_rejects_malformed_files(tmp_path, text):
    path = _write(tmp_path / "bad.csv", text)
    with pytest.raises(SceneFormatError):
        load_scene_csv(path, 10.0)


def test_save_and_load_keep_values_exactly(tmp_path, rng):
    scene = TimeSeriesScene("x", ("c0.v", "c1.v"), 10.0, rng.standard_normal((30, 2)))
    save_scene_csv(scene, tmp_path / "out" / "x.csv")
    loaded = load_scene_csv(tmp_path / "out" / "x.csv", 10.0)
    np.testing.assert_array_equal(loaded.values, scene.values)
    assert (tmp_path / "out" / "x.csv").read_bytes().count(b"\r") == 0


def test_scene_values_are_read_only(rng):
    scene = TimeSeriesScene("x", ("a", "b"), 10.0, rng.standard_normal((5, 2)))
    with pytest.raises(ValueError):
        scene.values[0, 0] = 1.0


def test_scene_rejects_duplicate_names_and_short_input():
    with pytest.raises(SceneFormatError):
        TimeSeriesScene("x", ("a", "a"), 10.0, np.zeros((5, 2)))
    with pytest.raises(InsufficientSamplesError):
        TimeSeriesScene("x", ("a",), 10.0, np.zeros((1, 1)))


def test_variant_parse_and_infer():
    assert Variant.parse("Velocity") is Variant.VELOCITY
    assert Variant.parse("a") is Variant.ACCELERATION
    assert Variant.infer(("c0.v", "c1.v")) is Variant.VELOCITY
    assert Variant.infer(("c0.v", "c1.a")) is None
    with pytest.raises(ValueError):
        Variant.parse("jerk")


def test_empty_directory_is_named(tmp_path):
    with pytest.raises(EmptySceneDirectoryError) as info:
        list_scene_files(tmp_path)
    assert str(tmp_path) in str(info.value)


def test_load_scene_dir_is_sorted(tmp_path):
    for name in ("b", "a", "c"):
        _write(tmp_path / f"{name}.csv", "x,y\n1,2\n3,4\n")
    assert [scene.scene_id for scene in load_scene_dir(tmp_path, 10.0)] == ["a", "b", "c"]


def test_moving_average_is_trailing_with_partial_start():
    scene = TimeSeriesScene("m", ("x",), 10.0, np.array([1.0, 2.0, 3.0, 4.0]))
    smoothed = moving_average(scene, 3)
    np.testing.assert_allclose(smoothed.values[:, 0], [1.0, 1.5, 2.0, 3.0])
    np.testing.assert_array_equal(moving_average(scene, 1).values, scene.values)
    with pytest.raises(ValueError):
        moving_average(scene, 0)


def test_resample_linear_halves_the_rate():
    values = np.arange(11, dtype=float)
    scene = TimeSeriesScene("r", ("x",), 10.0, values)
    resampled = resample_linear(scene, 5.0)
    assert resampled.sample_rate_hz == 5.0
    np.testing.assert_allclose(resampled.values[:, 0], [0.0, 2.0, 4.0, 6.0, 8.0, 10.0])


def test_resample_linear_interpolates_between_samples():
    scene = TimeSeriesScene("r", ("x",), 1.0, np.array([0.0, 10.0, 20.0]))
    resampled = resample_linear(scene, 2.0)
    np.testing.assert_allclose(resampled.values[:, 0], [0.0, 5.0, 10.0, 15.0, 20.0])


def test_resample_linear_needs_two_output_samples():
    scene = TimeSeriesScene("r", ("x",), 10.0, np.array([0.0, 1.0]))
    with pytest.raises(InsufficientSamplesError):
        resample_linear(scene, 1.0)


def test_lagged_matrix_column_layout():
    values = np.column_stack([np.arange(6.0), 100 + np.arange(6.0)])
    design, response = lagged_matrix(values, [1], [0, 1], 2)
    assert design.shape == (4, 4)
    # row r is time 2 + r; columns: x0 lag1, x0 lag2, x1 lag1, x1 lag2
    np.testing.assert_array_equal(design[0], [1.0, 0.0, 101.0, 100.0])
    np.testing.assert_array_equal(response[:, 0], [102.0, 103.0, 104.0, 105.0])


def test_lagged_design_uses_names():
    scene = TimeSeriesScene("l", ("a", "b"), 10.0, np.column_stack([np.arange(5.0), np.arange(5.0) * 2]))
    design, response = lagged_design(scene, ["b"], ["a"], 1)
    np.testing.assert_array_equal(design[:, 0], [0.0, 1.0, 2.0, 3.0])
    np.testing.assert_array_equal(response[:, 0], [2.0, 4.0, 6.0, 8.0])
    with pytest.raises(KeyError):
        lagged_design(scene, ["zz"], ["a"], 1)


def test_scene_length_stats():
    scenes = [TimeSeriesScene(str(n), ("x",), 10.0, np.zeros(n)) for n in (10, 20, 30, 40)]
    stats = scene_length_stats(scenes)
    assert stats.count == 4
    assert (stats.min_samples, stats.max_samples) == (10, 40)
    assert stats.mean_samples == pytest.approx(25.0)
    assert stats.median_samples == pytest.approx(25.0)
    assert stats.std_samples == pytest.approx(np.std([10, 20, 30, 40]))
    assert stats.max_duration_s == pytest.approx(4.0)
    with pytest.raises(CausalToolkitError):
        scene_length_stats([])
