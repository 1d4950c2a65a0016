#include "cyclelab/lyapunov.hpp"

#include <algorithm>

namespace cyclelab {

namespace {

// Splits the field into linear center + nonlinear parts, rejecting systems
// that are not in the lambda = 0 normal form.
void split_normal_form(const PlanarSystem& sys, PlanarPoly& p, PlanarPoly& q) {
    SymTab t = merge_tables(sys.P.table(), sys.Q.table());
    PlanarPoly P = sys.P.remap(t), Q = sys.Q.remap(t);
    if (!P.coeff(0, 0).is_zero() || !Q.coeff(0, 0).is_zero())
        fail(ErrorCode::WrongLinearPart, "origin is not a singularity");
    ParamPoly px = P.coeff(1, 0), py = P.coeff(0, 1);
    ParamPoly qx = Q.coeff(1, 0), qy = Q.coeff(0, 1);
    ParamPoly minus_one = ParamPoly::constant(t, Rat(-1));
    ParamPoly one = ParamPoly::constant(t, Rat(1));
    if (py != minus_one || qx != one)
        fail(ErrorCode::WrongLinearPart, "linear part must have P_y = -1, Q_x = 1");
    ParamPoly trace = px + qy;
    if (!trace.is_zero())
        fail(ErrorCode::NonzeroLinearTrace,
             "linear trace 2*lambda = " + trace.str() + "; substitute lambda = 0 first");
    if (!px.is_zero())
        fail(ErrorCode::WrongLinearPart, "diagonal linear terms must vanish");
    p = P + PlanarPoly::var_y(t);
    q = Q - PlanarPoly::var_x(t);
}

// Coefficient c_m of x^{k-m} y^m for each m, zero-filled.
std::vector<ParamPoly> coeff_row(const PlanarPoly& h, int k, const SymTab& t) {
    std::vector<ParamPoly> row(static_cast<std::size_t>(k) + 1, ParamPoly::zero(t));
    for (const auto& [key, c] : h.terms()) {
        if (key.degree() != k) fail(ErrorCode::Precondition, "not homogeneous");
        row[static_cast<std::size_t>(key.j)] = c;
    }
    return row;
}

PlanarPoly from_coeff_row(const std::vector<ParamPoly>& row, int k, const SymTab& t) {
    PlanarPoly h(t);
    for (int m = 0; m <= k; ++m) h.add_term({k - m, m}, row[static_cast<std::size_t>(m)]);
    return h;
}

Rat binom(int n, int r) {
    Rat acc(1);
    for (int i = 0; i < r; ++i) acc = acc * Rat(n - i) / Rat(i + 1);
    return acc;
}

}  // namespace

LyapunovCertificate focal_values(const PlanarSystem& sys, int max_eta) {
    if (max_eta < 2 || max_eta % 2 != 0)
        fail(ErrorCode::Precondition, "max_eta must be a positive even integer");
    PlanarPoly p, q;
    split_normal_form(sys, p, q);
    SymTab t = p.table();

    LyapunovCertificate cert;
    cert.V_parts.assign(static_cast<std::size_t>(max_eta) + 1, PlanarPoly(t));
    cert.etas.assign(static_cast<std::size_t>(max_eta) / 2 + 1, ParamPoly::zero(t));

    PlanarPoly V2(t);
    V2.add_term({2, 0}, ParamPoly::constant(t, rat(1, 2)));
    V2.add_term({0, 2}, ParamPoly::constant(t, rat(1, 2)));
    cert.V_parts[2] = V2;

    // accumulated nonlinear contribution sum_j (V_j)_x p + (V_j)_y q,
    // truncated beyond max_eta
    PlanarPoly G(t);
    G = G + V2.dx().mul_truncated(p, max_eta) + V2.dy().mul_truncated(q, max_eta);

    for (int k = 3; k <= max_eta; ++k) {
        auto Trow = coeff_row(-G.homogeneous_part(k), k, t);
        std::vector<ParamPoly> c(static_cast<std::size_t>(k) + 1, ParamPoly::zero(t));

        if (k % 2 == 1) {
            // odd-index coefficients: forward chain over even equations
            // (m+1) c_{m+1} - (k-m+1) c_{m-1} = T_m
            for (int m = 0; m <= k - 1; m += 2) {
                ParamPoly prev = (m == 0) ? ParamPoly::zero(t) : c[static_cast<std::size_t>(m - 1)];
                c[static_cast<std::size_t>(m + 1)] =
                    (Trow[static_cast<std::size_t>(m)] + prev * Rat(k - m + 1)) * rat(1, m + 1);
            }
            // even-index coefficients: backward chain over odd equations
            for (int m = k; m >= 1; m -= 2) {
                ParamPoly next = (m == k) ? ParamPoly::zero(t) : c[static_cast<std::size_t>(m + 1)];
                c[static_cast<std::size_t>(m - 1)] =
                    (next * Rat(m + 1) - Trow[static_cast<std::size_t>(m)]) * rat(1, k - m + 1);
            }
        } else {
            // even k: the rotation operator has kernel (x^2+y^2)^{k/2};
            // augment with the unknown eta on that kernel direction.
            // odd-index coefficients are affine in eta: c = u + v*eta
            std::vector<ParamPoly> u(static_cast<std::size_t>(k) + 1, ParamPoly::zero(t));
            std::vector<Rat> v(static_cast<std::size_t>(k) + 1, Rat(0));
            for (int m = 0; m <= k - 2; m += 2) {
                ParamPoly uprev = (m == 0) ? ParamPoly::zero(t) : u[static_cast<std::size_t>(m - 1)];
                Rat vprev = (m == 0) ? Rat(0) : v[static_cast<std::size_t>(m - 1)];
                u[static_cast<std::size_t>(m + 1)] =
                    (Trow[static_cast<std::size_t>(m)] + uprev * Rat(k - m + 1)) * rat(1, m + 1);
                v[static_cast<std::size_t>(m + 1)] =
                    (binom(k / 2, m / 2) + Rat(k - m + 1) * vprev) / Rat(m + 1);
            }
            // closing equation (m = k): -c_{k-1} = T_k + eta
            // => eta (1 + v_{k-1}) = -T_k - u_{k-1}
            Rat denom = Rat(1) + v[static_cast<std::size_t>(k - 1)];
            ParamPoly eta = (-Trow[static_cast<std::size_t>(k)] - u[static_cast<std::size_t>(k - 1)]) *
                            (Rat(1) / denom);
            cert.etas[static_cast<std::size_t>(k) / 2] = eta;
            for (int m = 1; m <= k - 1; m += 2)
                c[static_cast<std::size_t>(m)] =
                    u[static_cast<std::size_t>(m)] + eta * v[static_cast<std::size_t>(m)];
            // even-index coefficients: kernel gauge c_0 = 0, forward chain
            for (int m = 1; m <= k - 1; m += 2) {
                ParamPoly prev = (m == 1) ? ParamPoly::zero(t) : c[static_cast<std::size_t>(m - 1)];
                c[static_cast<std::size_t>(m + 1)] =
                    (Trow[static_cast<std::size_t>(m)] + prev * Rat(k - m + 1)) * rat(1, m + 1);
            }
        }

        PlanarPoly Vk = from_coeff_row(c, k, t);
        cert.V_parts[static_cast<std::size_t>(k)] = Vk;
        if (k < max_eta)  // contributions of V_max_eta all land above max_eta
            G = G + Vk.dx().mul_truncated(p, max_eta) + Vk.dy().mul_truncated(q, max_eta);
    }

    // residual identity, recomputed through the generic polynomial path:
    // Vdot - sum eta_{2m} (x^2+y^2)^m must vanish through degree max_eta
    PlanarPoly V(t);
    for (int k = 2; k <= max_eta; ++k) V = V + cert.V_parts[static_cast<std::size_t>(k)];
    PlanarPoly vdot = V.dx().mul_truncated(sys.P.remap(t), max_eta) +
                      V.dy().mul_truncated(sys.Q.remap(t), max_eta);
    PlanarPoly r2(t);
    r2.add_term({2, 0}, ParamPoly::constant(t, Rat(1)));
    r2.add_term({0, 2}, ParamPoly::constant(t, Rat(1)));
    for (int m = 1; 2 * m <= max_eta; ++m)
        vdot = vdot - r2.pow(static_cast<unsigned>(m)) * cert.etas[static_cast<std::size_t>(m)];
    cert.residual_ok = vdot.truncate_degree(max_eta).is_zero();
    return cert;
}

ParamPoly lyapunov_l0(const PlanarSystem& sys) {
    SymTab t = merge_tables(sys.P.table(), sys.Q.table());
    PlanarPoly P = sys.P.remap(t), Q = sys.Q.remap(t);
    if (!P.coeff(0, 0).is_zero() || !Q.coeff(0, 0).is_zero())
        fail(ErrorCode::NotCenterFocus, "origin is not a singularity");
    ParamPoly py = P.coeff(0, 1), qx = Q.coeff(1, 0);
    if (py != ParamPoly::constant(t, Rat(-1)) || qx != ParamPoly::constant(t, Rat(1)))
        fail(ErrorCode::NotCenterFocus, "off-diagonal linearization entries must be -1, 1");
    return (P.coeff(1, 0) + Q.coeff(0, 1)) * rat(1, 2);
}

LyapunovQuantity reduce_quantity(int k, const ParamPoly& raw) {
    LyapunovQuantity q;
    q.k = k;
    q.raw = raw;
    auto [content, primitive] = raw.content_and_primitive();
    q.content = content;
    q.primitive = primitive;
    return q;
}

FocalSequence lyapunov_chain(const PlanarSystem& sys, const std::vector<ChainStep>& steps,
                             int max_extra) {
    FocalSequence seq;
    PlanarSystem cur = sys;

    auto quantity_at = [&](int k) -> ParamPoly {
        if (k == 0) return lyapunov_l0(cur);
        auto cert = focal_values(cur, 2 * k + 2);
        seq.residual_ok = seq.residual_ok && cert.residual_ok;
        seq.etas = cert.etas;
        return cert.eta_for_L(k);
    };

    for (std::size_t s = 0; s < steps.size(); ++s) {
        int k = steps[s].k;
        // steps that revisit an index after a partial reduction report the
        // intermediate value again
        ParamPoly before = quantity_at(k);
        if (!before.is_zero()) seq.quantities.push_back(reduce_quantity(k, before));
        cur = cur.substitute(steps[s].bindings);
        for (const auto& b : steps[s].bindings) seq.substitutions.push_back(b);
        bool last_for_k = (s + 1 == steps.size()) || steps[s + 1].k != k;
        if (last_for_k) {
            ParamPoly after = quantity_at(k);
            if (!after.is_zero())
                fail(ErrorCode::SubstitutionDoesNotVanish,
                     "bindings do not annihilate L(" + std::to_string(k) + "); residue " + after.str());
        }
    }

    // first quantity after the chain
    int next = steps.empty() ? 0 : steps.back().k + 1;
    for (int k = next; k < next + max_extra; ++k) {
        ParamPoly value = quantity_at(k);
        if (!value.is_zero()) {
            seq.quantities.push_back(reduce_quantity(k, value));
            break;
        }
    }
    return seq;
}

WeakFocusResult weak_focus_order(const PlanarSystem& sys, int max_k) {
    WeakFocusResult r;
    r.checked_up_to = max_k;
    ParamPoly l0 = lyapunov_l0(sys);
    if (!l0.is_constant())
        fail(ErrorCode::Precondition, "weak_focus_order requires fully numeric parameters");
    if (!l0.is_zero()) fail(ErrorCode::NonzeroLinearTrace, "lambda != 0 at this point");
    for (int k = 1; k <= max_k; ++k) {
        auto cert = focal_values(sys, 2 * k + 2);
        const ParamPoly& eta = cert.eta_for_L(k);
        if (!eta.is_zero()) {
            r.order = k;
            r.first_nonzero = eta;
            return r;
        }
    }
    return r;
}

}  // namespace cyclelab
