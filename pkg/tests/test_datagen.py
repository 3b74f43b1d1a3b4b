import numpy as np
import pytest

from qtsvm.datagen import Line, SynthSpec, default_spec, generate_crossplanes
from qtsvm.exceptions import InvalidSpec


def test_line_normalizes_its_direction():
    line = Line(direction=[3.0, 4.0], offset=[1.0, 2.0])
    assert np.allclose(line.direction, [0.6, 0.8])
    assert np.allclose(line.offset, [1.0, 2.0])


def test_line_validation():
    with pytest.raises(InvalidSpec):
        Line(direction=[0.0, 0.0], offset=[0.0, 0.0])
    with pytest.raises(InvalidSpec):
        Line(direction=[1.0, 0.0], offset=[0.0, 0.0, 0.0])
    with pytest.raises(InvalidSpec):
        Line(direction=[np.nan, 1.0], offset=[0.0, 0.0])


def test_spec_validation():
    line = Line([1.0, 0.0], [0.0, 0.0])
    with pytest.raises(InvalidSpec):
        SynthSpec(n_features=0, m1=2, m2=2, line1=line, line2=line)
    with pytest.raises(InvalidSpec):
        SynthSpec(n_features=2, m1=0, m2=2, line1=line, line2=line)
    with pytest.raises(InvalidSpec):
        SynthSpec(n_features=3, m1=2, m2=2, line1=line, line2=line)
    with pytest.raises(InvalidSpec):
        SynthSpec(n_features=2, m1=2, m2=2, line1=line, line2=line, noise_sigma=-0.1)


def test_default_spec_geometry():
    spec = default_spec(9)
    assert (spec.m1, spec.m2) == (4, 5)
    assert np.allclose(spec.line1.direction, [1.0, 0.0])
    assert np.allclose(spec.line1.offset, [0.0, 0.0])
    assert np.allclose(spec.line2.offset, [0.0, 1.0])
    with pytest.raises(InvalidSpec):
        default_spec(1)
    with pytest.raises(InvalidSpec):
        default_spec(8, n_features=1)


def test_noiseless_samples_sit_on_their_lines():
    data = generate_crossplanes(default_spec(16), seed=4)
    assert data.A.shape == (8, 2)
    assert data.B.shape == (8, 2)
    assert np.abs(data.A[:, 1]).max() == 0.0
    assert np.allclose(data.B[:, 1], 1.0)
    # the line parameter stays inside [-1, 1]
    assert np.abs(data.A[:, 0]).max() <= 1.0
    assert np.abs(data.B[:, 0]).max() <= 1.0


def test_noise_perturbs_at_the_requested_scale():
    spec = default_spec(400, noise_sigma=0.05)
    data = generate_crossplanes(spec, seed=0)
    off = data.A[:, 1]
    assert 0.02 <= off.std() <= 0.09
    assert np.abs(off).max() <= 0.05 * 6


def test_generation_is_seed_deterministic():
    spec = default_spec(10, noise_sigma=0.1)
    a = generate_crossplanes(spec, seed=9)
    b = generate_crossplanes(spec, seed=9)
    assert np.array_equal(a.A, b.A) and np.array_equal(a.B, b.B)
    c = generate_crossplanes(spec, seed=10)
    assert not np.array_equal(a.A, c.A)


def test_custom_lines_are_respected():
    spec = SynthSpec(
        n_features=3,
        m1=6,
        m2=4,
        line1=Line([0.0, 0.0, 2.0], [1.0, 1.0, 0.0]),
        line2=Line([0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]),
    )
    data = generate_crossplanes(spec, seed=2)
    assert np.allclose(data.A[:, 0], 1.0) and np.allclose(data.A[:, 1], 1.0)
    assert np.allclose(data.B[:, 0], -1.0) and np.allclose(data.B[:, 2], 0.0)
