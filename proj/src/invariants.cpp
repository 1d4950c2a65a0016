#include "cyclelab/invariants.hpp"

namespace cyclelab {

namespace {

// Graded multivariate division: p = quot * d + rem where no monomial of rem
// is divisible by the leading monomial of d. Requires the leading phase
// coefficient of d to be a rational constant.
std::pair<PlanarPoly, PlanarPoly> reduce_graded(const PlanarPoly& p, const PlanarPoly& d) {
    auto dl = d.terms().rbegin();
    if (!dl->second.is_constant())
        fail(ErrorCode::NonMonicUndividable,
             "cannot divide: leading coefficient of the curve is not a rational constant");
    PhaseKey dk = dl->first;
    Rat dc = dl->second.constant_value();
    PlanarPoly work = p, quot(p.table()), rem(p.table());
    while (!work.is_zero()) {
        auto wl = work.terms().rbegin();
        PhaseKey wk = wl->first;
        if (wk.i >= dk.i && wk.j >= dk.j) {
            PlanarPoly qt(p.table());
            qt.add_term({wk.i - dk.i, wk.j - dk.j}, wl->second * (Rat(1) / dc));
            quot = quot + qt;
            work = work - qt * d;
        } else {
            PlanarPoly lt(p.table());
            lt.add_term(wk, wl->second);
            rem = rem + lt;
            work = work - lt;
        }
    }
    return {quot, rem};
}

}  // namespace

CofactorResult cofactor(const PlanarSystem& sys, const PlanarPoly& C) {
    if (C.is_zero()) fail(ErrorCode::ZeroCurve, "zero curve");
    if (C.degree() < 1) fail(ErrorCode::ZeroCurve, "curve must have positive degree");
    SymTab t = merge_tables(merge_tables(sys.P.table(), sys.Q.table()), C.table());
    PlanarPoly P = sys.P.remap(t), Q = sys.Q.remap(t), Cr = C.remap(t);
    PlanarPoly cdot = Cr.dx() * P + Cr.dy() * Q;

    CofactorResult res;
    bool tried_y = false;
    try {
        auto [quot, rem] = divide_in_y(cdot, Cr);
        tried_y = true;
        if (rem.is_zero()) {
            res.invariant = true;
            res.cofactor = quot;
        } else {
            res.invariant = false;
            res.remainder = rem;
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NonMonicUndividable) throw;
    }
    if (!tried_y) {
        // graded multivariate reduction fallback
        auto [quot, rem] = reduce_graded(cdot, Cr);
        if (rem.is_zero()) {
            res.invariant = true;
            res.cofactor = quot;
        } else {
            res.invariant = false;
            res.remainder = rem;
        }
    }
    if (res.invariant) {
        // reconstruction check on every call
        PlanarPoly check = cdot - Cr * res.cofactor;
        if (!check.is_zero()) fail(ErrorCode::Precondition, "cofactor reconstruction failed");
    }
    return res;
}

DulacResult dulac_divergence(const PlanarSystem& sys, const PlanarPoly& C) {
    if (C.is_zero()) fail(ErrorCode::ZeroCurve, "zero curve");
    SymTab t = merge_tables(merge_tables(sys.P.table(), sys.Q.table()), C.table());
    PlanarPoly P = sys.P.remap(t), Q = sys.Q.remap(t), Cr = C.remap(t);
    PlanarPoly div = P.dx() + Q.dy();
    PlanarPoly cdot = Cr.dx() * P + Cr.dy() * Q;
    DulacResult res;
    res.numerator = Cr * div - cdot;
    res.denominator_power = 2;
    res.is_constant = false;
    res.constant = ParamPoly::zero(t);
    if (res.numerator.is_zero()) {
        res.is_constant = true;
        return res;
    }
    PlanarPoly c2 = Cr * Cr;
    try {
        auto [quot, rem] = divide_in_y(res.numerator, c2);
        if (rem.is_zero() && quot.degree() == 0) {
            res.is_constant = true;
            res.constant = quot.coeff(0, 0);
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NonMonicUndividable) throw;
        auto quot = try_divide_exact(res.numerator, c2);
        if (quot && quot->degree() == 0) {
            res.is_constant = true;
            res.constant = quot->coeff(0, 0);
        }
    }
    return res;
}

SymmetryFlags symmetry_center_check(const PlanarSystem& sys) {
    SymmetryFlags f;
    f.x_axis_reversible = (sys.P.reflect_y() == -sys.P) && (sys.Q.reflect_y() == sys.Q);
    f.y_axis_reversible = (sys.P.reflect_x() == sys.P) && (sys.Q.reflect_x() == -sys.Q);
    return f;
}

PlanarPoly rif_check(const PlanarSystem& sys, const PlanarPoly& V) {
    SymTab t = merge_tables(merge_tables(sys.P.table(), sys.Q.table()), V.table());
    PlanarPoly P = sys.P.remap(t), Q = sys.Q.remap(t), Vr = V.remap(t);
    return P * Vr.dx() + Q * Vr.dy() - (P.dx() + Q.dy()) * Vr;
}

}  // namespace cyclelab
