#include "cyclelab/melnikov.hpp"

#include <algorithm>

namespace cyclelab {

Rat wallis(int m, int n) {
    if (m < 0 || n < 0) fail(ErrorCode::Precondition, "negative trigonometric power");
    if (m % 2 != 0 || n % 2 != 0) return Rat(0);
    // 2 (2p)! (2q)! / (4^{p+q} p! q! (p+q)!)  via the Beta identity
    int p = m / 2, q = n / 2;
    mpz_class f1, f2, d1, d2, d3;
    mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(2 * p));
    mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(2 * q));
    mpz_fac_ui(d1.get_mpz_t(), static_cast<unsigned long>(p));
    mpz_fac_ui(d2.get_mpz_t(), static_cast<unsigned long>(q));
    mpz_fac_ui(d3.get_mpz_t(), static_cast<unsigned long>(p + q));
    mpz_class four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(p + q));
    return rat_from_mpz(2 * f1 * f2, four_pow * d1 * d2 * d3);
}

TrigPoly TrigPoly::on_orbit(const PlanarPoly& f) {
    TrigPoly tp;
    tp.table = f.table();
    for (const auto& [key, coeff] : f.terms()) {
        // x^i y^j -> cos^i (-sin)^j sqrt(2h)^{i+j}
        Key k{key.i, key.j, key.i + key.j};
        ParamPoly c = (key.j % 2 == 0) ? coeff : -coeff;
        auto [it, inserted] = tp.terms.emplace(k, c);
        if (!inserted) it->second = it->second + c;
    }
    return tp;
}

HPiPoly TrigPoly::integrate() const {
    HPiPoly out(table, 1);
    for (const auto& [k, c] : terms) {
        Rat w = wallis(k.cos_pow, k.sin_pow);
        if (w == 0) continue;
        // nonzero Wallis value needs even powers, so sqrt2h_pow is even too
        if (k.sqrt2h_pow % 2 != 0)
            fail(ErrorCode::HalfPowerResidue, "surviving half power of h in an orbit integral");
        int hpow = k.sqrt2h_pow / 2;
        Rat scale = w;
        for (int i = 0; i < hpow; ++i) scale *= 2;  // (sqrt(2h))^{2m} = 2^m h^m
        out.add_term(hpow, c * scale);
    }
    if (out.is_zero()) return HPiPoly(table, 0);
    return out;
}

namespace {

/// Closed-orbit integral of a polynomial integrand over one period.
HPiPoly orbit_integral(const PlanarPoly& integrand) {
    return TrigPoly::on_orbit(integrand).integrate();
}

}  // namespace

MelnikovResult melnikov1(const PerturbedSystem& ps) {
    SymTab t = merge_tables(ps.f1.table(), ps.g1.table());
    PlanarPoly x = PlanarPoly::var_x(t), y = PlanarPoly::var_y(t);
    PlanarPoly integrand = ps.f1.remap(t) * x + ps.g1.remap(t) * y;  // f1 H_x + g1 H_y
    MelnikovResult r;
    r.M = orbit_integral(integrand);
    r.order = 1;
    r.time_reversed = ps.time_reversed;
    if (!r.M.coeff(0).is_zero())
        fail(ErrorCode::NonzeroConstantTerm, "M(0) != 0 for a perturbation of the center");
    return r;
}

HPiPoly melnikov1_closed_form(int n, const std::map<std::pair<int, int>, ParamPoly>& b) {
    if (n < 1) fail(ErrorCode::BadIndex, "closed form requires n >= 1");
    SymTab t = SymbolTable::make({});
    for (const auto& [key, val] : b) {
        auto [ti, tj] = key;
        if (ti < 0 || tj < 0 || ti % 2 != 0 || tj % 2 != 0 || ti / 2 + tj / 2 > n)
            fail(ErrorCode::BadIndex, "bad coefficient index (" + std::to_string(ti) + "," +
                                          std::to_string(tj) + ")");
        t = merge_tables(t, val.table());
    }
    // inner = 2 b00 + sum c_ij b_{2i,2j} h^{i+j}
    HPiPoly inner(t, 0);
    for (const auto& [key, val] : b) {
        int i = key.first / 2, j = key.second / 2;
        if (i == 0 && j == 0) {
            inner.add_term(0, val * Rat(2));
            continue;
        }
        mpz_class f2i, f2j, fi, fj, fij;
        mpz_fac_ui(f2i.get_mpz_t(), static_cast<unsigned long>(2 * i));
        mpz_fac_ui(f2j.get_mpz_t(), static_cast<unsigned long>(2 * j));
        mpz_fac_ui(fi.get_mpz_t(), static_cast<unsigned long>(i));
        mpz_fac_ui(fj.get_mpz_t(), static_cast<unsigned long>(j));
        mpz_fac_ui(fij.get_mpz_t(), static_cast<unsigned long>(i + j + 1));
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(i + j - 1));
        Rat cij = rat_from_mpz(f2i * f2j * (2 * j + 1), two_pow * fi * fj * fij);
        inner.add_term(i + j, val * cij);
    }
    // h (2h - 1) * inner * pi
    HPiPoly shell(t, 0);
    shell.add_term(2, ParamPoly::constant(t, Rat(2)));
    shell.add_term(1, ParamPoly::constant(t, Rat(-1)));
    HPiPoly M = shell * inner;
    M.set_pi_power(1);
    return M;
}

HPiPoly melnikov1_closed_form(int n) {
    PlanarSystem sys = kukles_odd(n);
    std::map<std::pair<int, int>, ParamPoly> b;
    b[{0, 0}] = ParamPoly::symbol(sys.params, "b00");
    for (int k = 1; k <= n; ++k)
        for (int i = k; i >= 0; --i)
            b[{2 * i, 2 * (k - i)}] = ParamPoly::symbol(sys.params, odd_coeff_name(2 * i, 2 * (k - i)));
    return melnikov1_closed_form(n, b);
}

BCoefficients b_coeffs(const HPiPoly& M) {
    if (!M.coeff(0).is_zero())
        fail(ErrorCode::NonzeroConstantTerm, "b_s extraction requires M(0) = 0");
    BCoefficients out;
    out.pi_power = M.pi_power();
    int deg = M.degree_h();
    for (int s = 0; s + 1 <= deg; ++s) out.b.push_back(M.coeff(s + 1));
    return out;
}

Rat han_jacobian(const std::vector<ParamPoly>& b, const std::vector<std::string>& delta,
                 const std::map<std::string, Rat>& point) {
    std::size_t k = delta.size();
    if (k == 0 || k > b.size())
        fail(ErrorCode::DimensionMismatch, "need 1 <= |delta| <= number of b coefficients");
    // Jacobian entries evaluated exactly at the point
    std::vector<std::vector<Rat>> J(k, std::vector<Rat>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) J[i][j] = b[i].derivative(delta[j]).evaluate(point);
    // Gaussian elimination, exact
    Rat det(1);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && J[piv][col] == 0) ++piv;
        if (piv == k) return Rat(0);
        if (piv != col) {
            std::swap(J[piv], J[col]);
            det = -det;
        }
        det *= J[col][col];
        Rat inv = Rat(1) / J[col][col];
        for (std::size_t row = col + 1; row < k; ++row) {
            if (J[row][col] == 0) continue;
            Rat f = J[row][col] * inv;
            for (std::size_t cc = col; cc < k; ++cc) J[row][cc] -= f * J[col][cc];
        }
    }
    return det;
}

namespace {

struct MonoIndex {
    std::vector<PhaseKey> keys;
    std::map<std::pair<int, int>, std::size_t> pos;

    explicit MonoIndex(int max_degree) {
        for (int d = 0; d <= max_degree; ++d)
            for (int j = 0; j <= d; ++j) {
                pos[{d - j, j}] = keys.size();
                keys.push_back({d - j, j});
            }
    }
};

}  // namespace

FrancoiseDecomposition francoise_decompose(const PerturbedSystem& ps) {
    MelnikovResult m1 = melnikov1(ps);
    if (!m1.M.is_zero())
        fail(ErrorCode::FirstOrderNotZero, "first Melnikov function is not identically zero");

    SymTab t = merge_tables(ps.f1.table(), ps.g1.table());
    PlanarPoly A = ps.g1.remap(t);        // dx component of omega_1
    PlanarPoly B = -(ps.f1.remap(t));     // dy component of omega_1
    int base_degree = std::max(A.degree(), B.degree());
    if (base_degree < 0) {  // zero one-form
        FrancoiseDecomposition d;
        d.S = PlanarPoly(t);
        d.R = PlanarPoly(t);
        d.residual_zero = true;
        return d;
    }

    for (int D = base_degree; D <= base_degree + 4; ++D) {
        // ansatz: one-form degree D, i.e. S of degree D+1, R of degree D-1
        int s_deg = D + 1, r_deg = std::max(D - 1, 0);
        MonoIndex s_idx(s_deg), r_idx(r_deg);
        std::size_t ns = s_idx.keys.size(), nr = r_idx.keys.size();
        // equations: coefficients of x^i y^j in (S_x + R x - A) and
        // (S_y + R y - B) for all i+j <= D
        MonoIndex eq_idx(D);
        std::size_t ne = eq_idx.keys.size();
        std::vector<std::vector<Rat>> mat(2 * ne, std::vector<Rat>(ns + nr, Rat(0)));
        std::vector<ParamPoly> rhs(2 * ne, ParamPoly::zero(t));

        for (std::size_t si = 0; si < ns; ++si) {
            PhaseKey k = s_idx.keys[si];
            if (k.i >= 1) {  // d/dx: (i) x^{i-1} y^j
                auto eq = eq_idx.pos.find({k.i - 1, k.j});
                if (eq != eq_idx.pos.end()) mat[eq->second][si] += Rat(k.i);
            }
            if (k.j >= 1) {  // d/dy into the second block
                auto eq = eq_idx.pos.find({k.i, k.j - 1});
                if (eq != eq_idx.pos.end()) mat[ne + eq->second][si] += Rat(k.j);
            }
        }
        for (std::size_t ri = 0; ri < nr; ++ri) {
            PhaseKey k = r_idx.keys[ri];
            auto eqx = eq_idx.pos.find({k.i + 1, k.j});
            if (eqx != eq_idx.pos.end()) mat[eqx->second][ns + ri] += Rat(1);
            auto eqy = eq_idx.pos.find({k.i, k.j + 1});
            if (eqy != eq_idx.pos.end()) mat[ne + eqy->second][ns + ri] += Rat(1);
        }
        for (const auto& [k, c] : A.terms()) {
            auto eq = eq_idx.pos.find({k.i, k.j});
            if (eq != eq_idx.pos.end()) rhs[eq->second] = c;
        }
        for (const auto& [k, c] : B.terms()) {
            auto eq = eq_idx.pos.find({k.i, k.j});
            if (eq != eq_idx.pos.end()) rhs[ne + eq->second] = c;
        }

        // exact Gaussian elimination with ParamPoly right-hand sides
        std::size_t ncols = ns + nr, nrows = 2 * ne;
        std::vector<std::size_t> pivot_col;
        std::size_t row = 0;
        for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
            std::size_t piv = row;
            while (piv < nrows && mat[piv][col] == 0) ++piv;
            if (piv == nrows) continue;
            std::swap(mat[piv], mat[row]);
            std::swap(rhs[piv], rhs[row]);
            Rat inv = Rat(1) / mat[row][col];
            for (std::size_t cc = col; cc < ncols; ++cc) mat[row][cc] *= inv;
            rhs[row] = rhs[row] * inv;
            for (std::size_t rr = 0; rr < nrows; ++rr) {
                if (rr == row || mat[rr][col] == 0) continue;
                Rat f = mat[rr][col];
                for (std::size_t cc = col; cc < ncols; ++cc) mat[rr][cc] -= f * mat[row][cc];
                rhs[rr] = rhs[rr] - rhs[row] * f;
            }
            pivot_col.push_back(col);
            ++row;
        }
        bool consistent = true;
        for (std::size_t rr = row; rr < nrows; ++rr)
            if (!rhs[rr].is_zero()) {
                consistent = false;
                break;
            }
        if (!consistent) continue;

        std::vector<ParamPoly> sol(ncols, ParamPoly::zero(t));  // free unknowns = 0
        for (std::size_t rr = 0; rr < row; ++rr) sol[pivot_col[rr]] = rhs[rr];

        FrancoiseDecomposition d;
        d.S = PlanarPoly(t);
        d.R = PlanarPoly(t);
        for (std::size_t si = 0; si < ns; ++si) d.S.add_term(s_idx.keys[si], sol[si]);
        for (std::size_t ri = 0; ri < nr; ++ri) d.R.add_term(r_idx.keys[ri], sol[ns + ri]);

        // residual identity: omega_1 - dS - R dH must vanish exactly
        PlanarPoly x = PlanarPoly::var_x(t), y = PlanarPoly::var_y(t);
        bool ok = (A - d.S.dx() - d.R * x).is_zero() && (B - d.S.dy() - d.R * y).is_zero();
        d.residual_zero = ok;
        if (ok) return d;
    }
    fail(ErrorCode::DecompositionNotFound,
         "no polynomial S, R with omega_1 = dS + R dH up to the degree cap");
}

MelnikovResult melnikov2(const PerturbedSystem& ps) {
    FrancoiseDecomposition d = francoise_decompose(ps);
    SymTab t = merge_tables(ps.f1.table(), ps.g1.table());
    PlanarPoly x = PlanarPoly::var_x(t), y = PlanarPoly::var_y(t);
    // on the orbit: omega_1 = (g1 y + f1 x) dt
    PlanarPoly integrand = d.R * (ps.g1.remap(t) * y + ps.f1.remap(t) * x);
    MelnikovResult r;
    r.M = orbit_integral(integrand);
    r.order = 2;
    r.time_reversed = ps.time_reversed;
    return r;
}

HPiPoly line_integral_dx(const PlanarPoly& S, int y_pole_order) {
    if (y_pole_order < 0 || y_pole_order > 1)
        fail(ErrorCode::UnsupportedPoleOrder, "pole order must be 0 or 1");
    // dx = y dt, so S y^{-k} dx = S y^{1-k} dt
    PlanarPoly integrand = S;
    if (y_pole_order == 0) integrand = S * PlanarPoly::var_y(S.table());
    return orbit_integral(integrand);
}

RatPoly to_ratpoly_in_h(const HPiPoly& M, const std::map<std::string, Rat>& point) {
    std::vector<Rat> coeffs(static_cast<std::size_t>(std::max(M.degree_h(), -1)) + 1, Rat(0));
    for (const auto& [k, c] : M.coeffs()) coeffs[static_cast<std::size_t>(k)] = c.evaluate(point);
    return RatPoly(std::move(coeffs));
}

std::vector<RootInterval> isolate_real_roots(const HPiPoly& M, const std::map<std::string, Rat>& point,
                                             const Rat& lo, const Rat& hi, bool unbounded) {
    RatPoly p = to_ratpoly_in_h(M, point);
    if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "M vanishes identically at this point");
    return isolate_roots(p, lo, hi, unbounded);
}

}  // namespace cyclelab
