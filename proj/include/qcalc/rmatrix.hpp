#pragma once
// The 4x4 R-matrix, the Yang-Baxter residual and the RTT residual.
// Composite indices run 11, 12, 21, 22, i.e. (i, j) -> 2i + j with 0-based i, j.

#include "qcalc/check.hpp"
#include "qcalc/ncalg.hpp"
#include "qcalc/presentations.hpp"

#include <array>
#include <string>
#include <vector>

namespace qcalc {

using RMatrix = std::array<std::array<Scalar, 4>, 4>;
using YbeResidual = std::array<std::array<Scalar, 8>, 8>;

inline constexpr int ridx(int i, int j) { return 2 * i + j; }

// Standard R with off-diagonal entry lambda; lambda = q - 1/q gives the quantum group.
inline RMatrix r_matrix(const Scalar& q, const Scalar& lambda) {
    RMatrix R{};
    R[0][0] = q;
    R[1][1] = Scalar(1);
    R[2][1] = lambda;
    R[2][2] = Scalar(1);
    R[3][3] = q;
    return R;
}

inline RMatrix standard_r() { return r_matrix(Scalar::q(), Scalar::lambda()); }

// Negative control: lambda replaced by 1.
inline RMatrix perturbed_r() { return r_matrix(Scalar::q(), Scalar(1)); }

inline RMatrix identity_r() {
    RMatrix R{};
    for (int i = 0; i < 4; ++i) R[i][i] = Scalar(1);
    return R;
}

inline RMatrix r_invert_q(const RMatrix& R) {
    RMatrix S;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) S[i][j] = R[i][j].invert_q();
    return S;
}

inline RMatrix r_mul(const RMatrix& A, const RMatrix& B) {
    RMatrix C{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) C[i][k] += A[i][j] * B[j][k];
    return C;
}

inline RMatrix r_transpose(const RMatrix& A) {
    RMatrix T;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) T[i][j] = A[j][i];
    return T;
}

// Conjugation by the flip P: (ij),(kl) -> (ji),(lk).
inline RMatrix r_flip(const RMatrix& A) {
    RMatrix F;
    auto sw = [](int x) { return ridx(x % 2, x / 2); };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) F[i][j] = A[sw(i)][sw(j)];
    return F;
}

inline bool r_equal(const RMatrix& A, const RMatrix& B) { return A == B; }

inline std::string r_table(const RMatrix& R) {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        s += "[";
        for (int j = 0; j < 4; ++j) s += (j ? ", " : "") + R[i][j].canonical();
        s += "]";
    }
    return s;
}

// R^{i1 j1}_{i2 j2} R^{i2 k1}_{i3 k2} R^{j2 k2}_{j3 k3} - R^{j1 k1}_{j2 k2} R^{i1 k2}_{i2 k3} R^{i2 j2}_{i3 j3},
// entry (4 i1 + 2 j1 + k1, 4 i3 + 2 j3 + k3). swap_sides negates.
inline YbeResidual ybe_residual(const RMatrix& R, bool swap_sides = false) {
    YbeResidual res{};
    for (int i1 = 0; i1 < 2; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int k1 = 0; k1 < 2; ++k1)
                for (int i3 = 0; i3 < 2; ++i3)
                    for (int j3 = 0; j3 < 2; ++j3)
                        for (int k3 = 0; k3 < 2; ++k3) {
                            Scalar l, r;
                            for (int i2 = 0; i2 < 2; ++i2)
                                for (int j2 = 0; j2 < 2; ++j2)
                                    for (int k2 = 0; k2 < 2; ++k2) {
                                        l += R[ridx(i1, j1)][ridx(i2, j2)] * R[ridx(i2, k1)][ridx(i3, k2)] *
                                             R[ridx(j2, k2)][ridx(j3, k3)];
                                        r += R[ridx(j1, k1)][ridx(j2, k2)] * R[ridx(i1, k2)][ridx(i2, k3)] *
                                             R[ridx(i2, j2)][ridx(i3, j3)];
                                    }
                            res[4 * i1 + 2 * j1 + k1][4 * i3 + 2 * j3 + k3] = swap_sides ? r - l : l - r;
                        }
    return res;
}

inline bool is_zero(const YbeResidual& r) {
    for (const auto& row : r)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

inline CheckResult ybe_check(const RMatrix& R, const std::string& name, bool expect_zero) {
    auto res = ybe_residual(R);
    std::string detail;
    for (int i = 0; i < 8 && detail.empty(); ++i)
        for (int j = 0; j < 8 && detail.empty(); ++j)
            if (!res[i][j].is_zero())
                detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + res[i][j].pretty();
    bool zero = detail.empty();
    if (expect_zero) return make_check(name, "2.5", zero, detail);
    return make_check(name, "2.5", !zero, zero ? "residual unexpectedly zero" : "nonzero as expected: " + detail);
}

// Component index of (i, j, m, n).
inline constexpr int rtt_index(int i, int j, int m, int n) { return 8 * i + 4 * j + 2 * m + n; }

// R^{ij}_{kl} T^k_m T^l_n - T^j_l T^i_k R^{kl}_{mn} for all (i, j, m, n), unnormalized.
inline std::vector<Element> rtt_free(const RMatrix& R, const Presentation& p) {
    Mat2 T = t_matrix(p);
    std::vector<Element> out(16);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n) {
                    Element e;
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l) {
                            e.add(T[k][m] * T[l][n], R[ridx(i, j)][ridx(k, l)]);
                            e.add(T[j][l] * T[i][k], -R[ridx(k, l)][ridx(m, n)]);
                        }
                    out[rtt_index(i, j, m, n)] = e;
                }
    return out;
}

inline std::vector<Element> rtt_residual(const RMatrix& R, const Presentation& p) {
    Normalizer nf(p);
    auto v = rtt_free(R, p);
    for (auto& e : v) e = nf(e);
    return v;
}

inline std::string rtt_label(int idx) {
    return "(" + std::to_string(idx / 8 + 1) + "," + std::to_string(idx / 4 % 2 + 1) + "," +
           std::to_string(idx / 2 % 2 + 1) + "," + std::to_string(idx % 2 + 1) + ")";
}

inline CheckResult rtt_check(const RMatrix& R, const Presentation& p) {
    auto v = rtt_residual(R, p);
    std::string detail;
    for (int i = 0; i < 16; ++i)
        if (!v[i].is_zero()) detail += rtt_label(i) + ": " + p.str(v[i]) + "; ";
    return make_check("RTT residuals vanish under " + p.name(), "2.4", detail.empty(), detail);
}

// Every form generator times every RTT residual: form on the left for left calculi, on the right otherwise.
inline CheckResult forms_rtt_compat(const RMatrix& R, const Presentation& p, bool forms_on_left) {
    Normalizer nf(p);
    auto v = rtt_free(R, p);
    std::string detail;
    std::size_t forms = 0;
    for (Sym s = 0; s < p.num_generators(); ++s) {
        if (!p.is_odd(s)) continue;
        ++forms;
        for (int i = 0; i < 16; ++i) {
            Element e = nf(forms_on_left ? Element::gen(s) * v[i] : v[i] * Element::gen(s));
            if (!e.is_zero()) detail += p.generator(s).name + " " + rtt_label(i) + ": " + p.str(e) + "; ";
        }
    }
    if (forms == 0) detail = "no form generators";
    return make_check(std::string("forms ") + (forms_on_left ? "times" : "after") + " RTT residuals under " + p.name(),
                      forms_on_left ? "3.2" : "5", detail.empty(), detail);
}

struct InverseCandidate {
    std::string name;
    bool holds;
};

// Which reading of R_q = R^-1_{1/q} holds: the second factor plain, transposed, flipped, or flipped-transposed.
inline std::vector<InverseCandidate> r_inverse_candidates(const RMatrix& R = standard_r()) {
    RMatrix B = r_invert_q(R), I = identity_r();
    std::vector<std::pair<std::string, RMatrix>> cands = {
        {"plain", B}, {"transpose", r_transpose(B)}, {"flip", r_flip(B)}, {"flip-transpose", r_flip(r_transpose(B))}};
    std::vector<InverseCandidate> out;
    for (const auto& [n, X] : cands) out.push_back({n, r_mul(R, X) == I && r_mul(X, R) == I});
    return out;
}

inline CheckResult r_inverse_check() {
    std::string record;
    bool plain = false;
    for (const auto& c : r_inverse_candidates()) {
        record += c.name + (c.holds ? ": holds; " : ": fails; ");
        if (c.name == "plain") plain = c.holds;
    }
    return {"R(q) R(1/q) = 1", "6", plain ? Status::pass : Status::fail, record, 0};
}

}  // namespace qcalc
