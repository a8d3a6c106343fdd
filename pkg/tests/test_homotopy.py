import pytest

from gradedjets import (
    PreconditionError,
    Signature,
    d_H,
    density_homotopy_alt,
    dplus,
    dx,
    horizontal_homotopy,
    lowering_homotopy,
    one_contact_homotopy,
    rho_kernel_homotopy,
    split_base,
    theta,
    total_derivative,
    var,
    vol,
    xcoord,
)


class TestSplitBase:
    def test_function(self, s1):
        x, y, yx = xcoord(s1, 0), var(s1, "y"), var(s1, "y", [0])
        parts = split_base(x + 2 * y * yx)
        assert parts.base_part == x
        assert parts.fiber_part == 2 * y * yx

    def test_forms(self, s1):
        assert split_base(var(s1, "y", [0]) * dx(s1, 0)).base_part == 0
        parts = split_base(5 * vol(s1))
        assert parts.base_part == 5 * vol(s1)
        assert parts.fiber_part == 0


class TestDplus:
    def test_lowers(self, s1):
        assert dplus(0, var(s1, "y", [0])) == var(s1, "y")
        assert dplus(0, var(s1, "y")) == 0

    def test_bracket_example(self, s1):
        yx = var(s1, "y", [0])
        assert dplus(0, total_derivative(yx, 0)) - total_derivative(dplus(0, yx), 0) == yx

    def test_rejects_field_free(self, s1):
        with pytest.raises(ValueError):
            dplus(0, xcoord(s1, 0))

    def test_jet_order_does_not_grow(self, s2):
        p = var(s2, "y", [0, 1]) * var(s2, "y", [1, 1, 1])
        assert dplus(1, p).jet_order() <= p.jet_order()


class TestHorizontalHomotopy:
    def test_closed_one_form(self, s2):
        phi = var(s2, "y", [0]) * dx(s2, 0) + var(s2, "y", [1]) * dx(s2, 1)
        assert horizontal_homotopy(phi).xi == var(s2, "y")

    def test_trivial_density(self, s1):
        y, yx = var(s1, "y"), var(s1, "y", [0])
        assert horizontal_homotopy(2 * y * yx * vol(s1)).xi == y ** 2

    def test_base_only(self, s1):
        res = horizontal_homotopy(vol(s1))
        assert res.xi == 0
        assert res.base_remainder == vol(s1)

    def test_not_trivial(self, s1, free_lagrangian):
        with pytest.raises(PreconditionError) as info:
            horizontal_homotopy(free_lagrangian)
        assert info.value.certificate == -(var(s1, "y", [0, 0]) * theta(s1, "y") * vol(s1))

    def test_not_closed(self, s2):
        with pytest.raises(PreconditionError):
            horizontal_homotopy(var(s2, "y") * dx(s2, 0))

    def test_odd_fields(self):
        sig = Signature(2, (("c", 1), ("y", 0)))
        xi = var(sig, "c") * var(sig, "c", [1]) * dx(sig, 1) + var(sig, "y", [0]) * var(sig, "c") * dx(sig, 0)
        target = d_H(xi)
        assert d_H(horizontal_homotopy(target).xi) == target


class TestVariants:
    def test_lowering_series(self, s2):
        phi = var(s2, "y", [0]) * dx(s2, 0) + var(s2, "y", [1]) * dx(s2, 1)
        assert lowering_homotopy(phi) == var(s2, "y")

    def test_density_alt(self, s1):
        y, yx = var(s1, "y"), var(s1, "y", [0])
        assert density_homotopy_alt(2 * y * yx * vol(s1)) == y ** 2
        assert density_homotopy_alt(total_derivative(y ** 3, 0) * vol(s1)) == y ** 3
        assert density_homotopy_alt(0 * vol(s1)) == 0

    def test_density_alt_differs_by_exact(self):
        sig = Signature(2, (("y", 0),))
        xi = var(sig, "y") * var(sig, "y", [0, 1]) * dx(sig, 1)
        L = d_H(xi)
        a = density_homotopy_alt(L)
        b = horizontal_homotopy(L).xi
        assert d_H(a - b) == 0


class TestOneContact:
    def test_round_trip(self, s2):
        target = d_H(var(s2, "y") * theta(s2, "y"))
        xi = one_contact_homotopy(target)
        assert d_H(xi) == target

    def test_zero(self, s2):
        assert one_contact_homotopy(0 * theta(s2, "y")) == 0

    def test_top_degree_rejected(self, s1):
        with pytest.raises(ValueError):
            one_contact_homotopy(theta(s1, "y") * vol(s1))

    def test_odd_field(self):
        sig = Signature(3, (("c", 1), ("y", 0)))
        src = var(sig, "c") * theta(sig, "y", [2]) * dx(sig, 0) \
            + var(sig, "y", [1]) * theta(sig, "c") * dx(sig, 2)
        target = d_H(src)
        assert d_H(one_contact_homotopy(target)) == target


class TestRhoKernel:
    def test_example(self, s1):
        assert rho_kernel_homotopy(-(theta(s1, "y", [0]) * dx(s1, 0))) == theta(s1, "y")

    def test_zero(self, s1):
        assert rho_kernel_homotopy(0 * vol(s1)) == 0

    def test_source_rejected(self, s1):
        sigma = theta(s1, "y") * var(s1, "y") * vol(s1)
        with pytest.raises(PreconditionError) as info:
            rho_kernel_homotopy(sigma)
        assert info.value.certificate == sigma
