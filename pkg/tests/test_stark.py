import json

import numpy as np
import pytest

from holostark import (InvalidInput, UnknownMaterial, builtin_materials, d_jacobian,
                       d_linear, d_quadratic, direction_grid, eigen_split,
                       feasibility_report, hamiltonian, isotropic_check,
                       load_material_table, material_lookup)
from holostark.stark import DVector, d_components

from util import (linear_hamiltonian_direct, quadratic_hamiltonian_direct,
                  random_unit)


class TestMaterials:
    def test_table_values(self, ge_b, si_b):
        assert (ge_b.alpha, ge_b.beta, ge_b.delta) == (1.0, -0.3, -0.36)
        assert ge_b.chi == 0.7e-3 and ge_b.rbar_angstrom == 91.0
        assert (si_b.alpha, si_b.beta, si_b.delta) == (1.0, -0.2, -0.42)
        assert si_b.chi == 1e-2 and si_b.rbar_angstrom == 34.4

    def test_ionization_energies(self):
        assert material_lookup("Ge", "B").ionization_meV == 10.4
        assert material_lookup("Ge", "Al").ionization_meV == 10.2
        assert material_lookup("Ge", "Ga").ionization_meV == 10.8
        assert material_lookup("Si", "Ga").ionization_meV == 65.0
        assert material_lookup("Si", "Al").ionization_meV == 57.0

    def test_unknown_material(self):
        with pytest.raises(UnknownMaterial):
            material_lookup("GaAs", "B")

    def test_builtin_listing(self):
        mats = builtin_materials()
        assert len(mats) == 6
        assert {(m.name, m.dopant) for m in mats} == {
            ("Ge", "B"), ("Ge", "Al"), ("Ge", "Ga"),
            ("Si", "B"), ("Si", "Al"), ("Si", "Ga")}

    def test_user_table(self, tmp_path):
        rec = dict(material="GaAs", dopant="Be", alpha=1.0, beta=-0.25,
                   delta=-0.4, chi=2e-3, rbar_angstrom=50.0, ionization_meV=28.0)
        path = tmp_path / "materials.json"
        path.write_text(json.dumps([rec]))
        table = load_material_table(path)
        m = material_lookup("GaAs", "Be", table=table)
        assert m.rbar_angstrom == 50.0
        with pytest.raises(UnknownMaterial):
            material_lookup("GaAs", "Be")

    def test_spherical_variant(self, ge_b):
        m = ge_b.spherical()
        assert m.beta == pytest.approx(-0.36 / np.sqrt(3), rel=1e-15)
        assert m.delta == ge_b.delta

    def test_invalid_constants_rejected(self, ge_b):
        from dataclasses import replace
        with pytest.raises(InvalidInput):
            replace(ge_b, rbar_angstrom=-1.0)


class TestDLinear:
    def test_hand_value(self, ge_b):
        d = d_linear([1e5, 0.0, 0.0], ge_b)
        # 91 Angstrom * 1e5 V/m -> 0.91 meV dipole energy, times chi
        assert d.d[0] == pytest.approx(6.37e-4, rel=1e-12)
        assert d.d[1] == 0.0 and d.d[2] == 0.0
        assert d.d0 == 0.0 and d.d[3] == 0.0 and d.d[4] == 0.0

    def test_zero_field(self, ge_b):
        d = d_linear([0.0, 0.0, 0.0], ge_b)
        assert d.norm == 0.0 and d.d0 == 0.0

    def test_direction_independent_gap(self, ge_b, rng):
        e_mag = 2.5e5
        gaps = []
        for _ in range(100):
            d = d_linear(random_unit(rng, 3) * e_mag, ge_b)
            gaps.append(eigen_split(d)[2])
        gaps = np.array(gaps)
        assert (gaps.max() - gaps.min()) / gaps.mean() <= 1e-12

    def test_axis_matches_body_diagonal(self, ge_b):
        g1 = eigen_split(d_linear([1e5, 0, 0], ge_b))[2]
        g2 = eigen_split(d_linear(np.array([1, 1, 1]) * 1e5 / np.sqrt(3), ge_b))[2]
        assert g1 == pytest.approx(g2, rel=1e-14)


class TestDQuadratic:
    def test_hand_values_along_z(self, ge_b):
        d = d_quadratic([0.0, 0.0, 1e6], ge_b)
        # p0 E = 9.1 meV; prefactor -(9.1^2)/10.4 = -7.9625 meV
        assert d.d0 == pytest.approx(-7.9625, rel=1e-12)
        assert np.allclose(d.d[:4], 0.0, atol=0)
        assert d.d[4] == pytest.approx(2.38875, rel=1e-12)
        eps_minus, eps_plus, gap = eigen_split(d)
        assert eps_minus == pytest.approx(-10.35125, rel=1e-12)
        assert eps_plus == pytest.approx(-5.57375, rel=1e-12)
        assert gap == pytest.approx(4.7775, rel=1e-12)

    def test_zero_field(self, ge_b):
        d = d_quadratic([0.0, 0.0, 0.0], ge_b)
        assert d.norm == 0.0 and d.d0 == 0.0

    def test_equal_component_symmetry(self, ge_b):
        d = d_quadratic(np.array([1.0, 1.0, 0.0]) * 1e6 / np.sqrt(2), ge_b)
        assert d.d[3] == 0.0  # Ex^2 = Ey^2
        assert d.d[2] != 0.0  # ExEy term survives


class TestHamiltonian:
    def test_zero_d(self, basis):
        d = DVector(d0=0.0, d=np.zeros(5), regime="quadratic")
        assert np.abs(hamiltonian(d, basis)).max() == 0.0

    def test_gamma5_only(self, basis):
        d = DVector(d0=0.0, d=np.array([0, 0, 0, 0, 1.7]), regime="quadratic")
        h = hamiltonian(d, basis)
        assert np.allclose(np.linalg.eigvalsh(h), [-1.7, -1.7, 1.7, 1.7], atol=1e-13)

    def test_hermitian(self, basis, ge_b, rng):
        for _ in range(20):
            h = hamiltonian(d_quadratic(rng.normal(size=3) * 1e6, ge_b), basis)
            assert np.abs(h - h.conj().T).max() <= 1e-13

    def test_quadratic_matches_direct_construction(self, basis, spin, ge_b, rng):
        for _ in range(50):
            e = rng.normal(size=3) * 1e6
            h = hamiltonian(d_quadratic(e, ge_b), basis)
            assert np.abs(h - quadratic_hamiltonian_direct(e, ge_b, spin)).max() <= 1e-10

    def test_linear_matches_direct_construction(self, basis, spin, ge_b, rng):
        for _ in range(50):
            e = rng.normal(size=3) * 1e5
            h = hamiltonian(d_linear(e, ge_b), basis)
            assert np.abs(h - linear_hamiltonian_direct(e, ge_b, spin)).max() <= 1e-10

    def test_eigen_split_matches_diagonalization(self, basis, ge_b, rng):
        for _ in range(50):
            d = d_quadratic(rng.normal(size=3) * 1e6, ge_b)
            eps_minus, eps_plus, _ = eigen_split(d)
            w = np.linalg.eigvalsh(hamiltonian(d, basis))
            assert np.abs(w - [eps_minus, eps_minus, eps_plus, eps_plus]).max() <= 1e-10

    def test_ge_b_quadratic_levels(self, basis, ge_b):
        h = hamiltonian(d_quadratic([0, 0, 1e6], ge_b), basis)
        w = np.linalg.eigvalsh(h)
        assert np.allclose(w, [-10.35125, -10.35125, -5.57375, -5.57375], atol=1e-10)


class TestKramers:
    @pytest.mark.parametrize("regime", ["linear", "quadratic"])
    def test_double_degeneracy(self, basis, ge_b, rng, regime):
        build = d_linear if regime == "linear" else d_quadratic
        for _ in range(100):
            d = build(rng.normal(size=3) * 1e6, ge_b)
            w = np.linalg.eigvalsh(hamiltonian(d, basis))
            assert w[1] - w[0] <= 1e-10
            assert w[3] - w[2] <= 1e-10


class TestIsotropicCheck:
    def test_along_z(self, ge_spherical, spin):
        assert isotropic_check([0.0, 0.0, 1e6], ge_spherical, spin) <= 1e-10

    def test_random_directions(self, ge_spherical, spin, rng):
        for _ in range(100):
            assert isotropic_check(random_unit(rng, 3), ge_spherical, spin) <= 1e-10

    def test_real_ge_is_anisotropic(self, ge_b, spin):
        assert isotropic_check([1.0, 1.0, 0.3], ge_b, spin) > 1e-3

    def test_quadratic_gap_depends_on_direction(self, ge_b):
        comps = d_components(direction_grid(), ge_b, "quadratic")
        gaps = 2 * np.linalg.norm(comps[:, 1:], axis=1)
        assert gaps.max() / gaps.min() > 1 + 1e-6


class TestFeasibility:
    def test_reference_numbers(self, ge_b):
        rep = feasibility_report(1e6, ge_b, 2020.0)
        # h * 2020 Hz in meV
        assert rep.drive_quantum_meV == pytest.approx(8.35404874592e-9, rel=1e-12)
        assert rep.gap_max_meV == pytest.approx(4.7775, rel=1e-12)
        assert rep.gap_min_meV == pytest.approx(
            2 * (9.1**2 / 10.4) * 0.36 / np.sqrt(3), rel=1e-12)
        assert rep.adiabaticity_ratio > 1e8
        assert rep.flags == []
        # worst-direction level shift sits just inside the ionization energy
        assert 0 < rep.ionization_margin_meV < 0.1

    def test_fast_rotation_flags_adiabaticity(self, ge_b):
        rep = feasibility_report(1e6, ge_b, 1e15)
        assert rep.drive_quantum_meV == pytest.approx(4.135667696e3, rel=1e-12)
        assert rep.adiabaticity_flag and "adiabaticity" in rep.flags

    def test_strong_field_flags_ionization(self, ge_b):
        rep = feasibility_report(1.2e6, ge_b, 2020.0)
        assert rep.ionization_flag

    def test_invalid_inputs(self, ge_b):
        with pytest.raises(InvalidInput):
            feasibility_report(1e6, ge_b, 0.0)
        with pytest.raises(InvalidInput):
            feasibility_report(0.0, ge_b, 2020.0)
        with pytest.raises(InvalidInput):
            feasibility_report(-1e6, ge_b, 2020.0)


class TestJacobian:
    @pytest.mark.parametrize("regime", ["linear", "quadratic"])
    def test_matches_finite_differences(self, ge_b, rng, regime):
        for _ in range(20):
            e = rng.normal(size=3) * 1e6
            jac = d_jacobian(e, ge_b, regime)
            h = 1e-6 * np.linalg.norm(e)
            for i in range(3):
                step = np.zeros(3)
                step[i] = h
                fd = (d_components(e + step, ge_b, regime)[1:]
                      - d_components(e - step, ge_b, regime)[1:]) / (2 * h)
                scale = max(np.abs(jac[:, i]).max(), 1e-30)
                assert np.abs(fd - jac[:, i]).max() <= 1e-6 * max(scale, 1.0)


def test_linear_dvector_invariant_enforced():
    with pytest.raises(InvalidInput):
        DVector(d0=1.0, d=np.array([1, 0, 0, 0, 0.0]), regime="linear")
    with pytest.raises(InvalidInput):
        DVector(d0=0.0, d=np.array([1, 0, 0, 0, 2.0]), regime="linear")
    with pytest.raises(InvalidInput):
        DVector(d0=0.0, d=np.zeros(5), regime="mixed")
