#ifndef MLV_INDVAL_HPP
#define MLV_INDVAL_HPP

#include "mlv/basefield.hpp"
#include "mlv/ordgroup.hpp"
#include "mlv/poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mlv {

struct polygon_side {
    group_value slope;      // (y_end - y_start) / (end - start)
    int start = 0, end = 0;
};

struct newton_polygon {
    std::vector<std::pair<int, group_value>> points;
    std::vector<polygon_side> sides;
    /* sides whose negated slope exceeds bound, least steep first */
    std::vector<polygon_side> steeper_than(group_value const& bound) const;
};

newton_polygon lower_hull(std::vector<std::pair<int, group_value>> pts);

template <class B>
struct residual_data {
    polynomial<typename B::kelem> R;
    group_value value;
    std::vector<int> S;
    int l0 = 0, l = 0, d = 0;
    long e = 1;
};

template <class B>
struct key_certificate {
    bool key = false;
    std::string kind;       // "same-initial-form" | "residually-irreducible" | reason for rejection
    polynomial<typename B::kelem> R;
};

/* A chain mu_0 -> mu_1 -> ... with strictly increasing key degrees;
 * refinements are folded into the level they refine and kept only in the
 * raw step list. Level L stores phi_L, gamma_L, Gamma0_L = <vK, gamma_j : j<L>,
 * e_L and the canonical u_L of value e_L gamma_L. The residue tower has one
 * level per chain level: kappa_L is level L of the tower. */
template <class B>
class inductive_valuation {
public:
    using elem = typename B::elem;
    using kelem = typename B::kelem;
    using tower_t = typename B::tower_t;
    using epoly = polynomial<elem>;
    using kpoly = polynomial<kelem>;

    struct level {
        epoly phi;
        group_value gamma;
        rational_lattice g0;
        long e = 1;
        std::vector<long> u_exps;
        epoly u;
    };
    struct raw_step {
        epoly phi;
        group_value gamma;
        bool refinement = false;
    };

private:
    std::shared_ptr<const B> K_;
    std::vector<level> lv_;
    tower_t tower_;
    std::vector<raw_step> raw_;

    inductive_valuation(std::shared_ptr<const B> K, tower_t t) : K_(std::move(K)), tower_(std::move(t)) {}
    inductive_valuation push_level(epoly const& phi, group_value const& gamma, kpoly const& psi) const;

public:
    static inductive_valuation depth_zero(std::shared_ptr<const B> K, elem const& a, group_value const& gamma);

    B const& field() const { return *K_; }
    std::shared_ptr<const B> field_ptr() const { return K_; }
    tower_t const& tower() const { return tower_; }
    int top() const { return (int)lv_.size() - 1; }
    level const& at(int L) const { return lv_.at(L); }
    bool terminal() const { return lv_.back().gamma.is_infinite(); }
    std::vector<raw_step> const& raw_steps() const { return raw_; }
    epoly const& key() const { return lv_.back().phi; }
    int rank() const { return K_->rank(); }
    elem one() const { return K_->from_int(1); }
    epoly x() const { return epoly::monomial(one(), 1); }

    inductive_valuation prefix(int L) const;
    inductive_valuation augment(epoly const& phi, group_value const& gamma) const;

    group_value evaluate(epoly const& f) const { return eval(top(), f); }
    group_value eval(int L, epoly const& f) const;
    group_value unit_value(int L, epoly const& a) const;

    struct value_group_info {
        std::vector<std::vector<rat>> gamma_gens, gamma0_gens;
        long e = 1;
    };
    value_group_info value_group_data() const;

    epoly monomial(int L, group_value g, std::vector<long>* exps = nullptr) const;
    epoly element_of_value(group_value const& g) const { return monomial(top(), g); }

    kelem norm(int L, std::vector<long> d) const;
    kelem res(int L, epoly const& a) const;
    std::pair<group_value, kelem> unit_residue(epoly const& a) const;

    residual_data<B> residual_at(int L, epoly const& g) const;
    residual_data<B> residual(epoly const& g) const { return residual_at(top(), g); }
    key_certificate<B> is_key(epoly const& Q) const;
    epoly lift_residue(int L, kelem const& lambda) const;
    epoly lift_key(kpoly const& psi) const;
    newton_polygon polygon(epoly const& phi, epoly const& f) const;
    int relative_residue_degree(epoly const& phi_next) const;
    bool residual_root_check(inductive_valuation const& nu, epoly const& g) const;

    std::string str(elem const& a) const { return K_->str(a); }
    std::string str(epoly const& f, std::string const& var = "x") const;
    std::string kstr(kpoly const& f, int L, std::string const& var = "y") const;
    std::string kstr(kelem const& a, int L) const { return tower_.str(a, L); }
};

template <class B>
inductive_valuation<B> inductive_valuation<B>::depth_zero(std::shared_ptr<const B> K, elem const& a, group_value const& gamma)
{
    if (gamma.is_finite() && gamma.rank() != K->rank()) fail(error_kind::mixed_rank, "value of the wrong rank");
    inductive_valuation v(K, K->base_tower());
    level l;
    elem one = K->from_int(1);
    l.phi = epoly({elem{} - a, one});
    l.gamma = gamma.is_infinite() ? group_value::infinity(K->rank()) : gamma;
    l.g0 = rational_lattice::standard(K->rank());
    if (gamma.is_finite()) {
        l.e = l.g0.order_of(gamma.coords());
        l.u = epoly::constant(K->section(gamma * l.e));
    }
    v.lv_.push_back(l);
    v.raw_.push_back({l.phi, l.gamma, false});
    return v;
}

template <class B>
inductive_valuation<B> inductive_valuation<B>::prefix(int L) const
{
    inductive_valuation v(K_, tower_.truncated(L));
    v.lv_.assign(lv_.begin(), lv_.begin() + L + 1);
    v.raw_ = raw_;
    return v;
}

template <class B>
inductive_valuation<B> inductive_valuation<B>::push_level(epoly const& phi, group_value const& gamma, kpoly const& psi) const
{
    int L = top();
    inductive_valuation v(K_, tower_.extended(psi));
    v.lv_ = lv_;
    v.raw_ = raw_;
    level l;
    l.phi = phi;
    l.gamma = gamma;
    l.g0 = lv_[L].g0.with(lv_[L].gamma.coords());
    v.lv_.push_back(l);
    if (gamma.is_finite()) {
        auto& nl = v.lv_.back();
        nl.e = nl.g0.order_of(gamma.coords());
        std::vector<long> ex;
        auto u = v.monomial(L + 1, gamma * nl.e, &ex);
        v.lv_.back().u = u;
        v.lv_.back().u_exps = ex;
    }
    return v;
}

template <class B>
inductive_valuation<B> inductive_valuation<B>::augment(epoly const& phi, group_value const& gamma) const
{
    if (terminal()) fail(error_kind::terminal_valuation, "cannot augment a valuation with infinite last value");
    if (phi.is_zero() || !(phi.lc() == one())) fail(error_kind::non_monic, "key polynomial must be monic");
    if (gamma.is_finite() && gamma.rank() != rank()) fail(error_kind::mixed_rank, "value of the wrong rank");
    auto cert = is_key(phi);
    if (!cert.key) fail(error_kind::not_key_polynomial, str(phi) + " (" + cert.kind + ")");
    auto mv = evaluate(phi);
    if (!(gamma > mv)) fail(error_kind::non_increasing_value, "value " + gamma.str() + " does not exceed " + mv.str());
    int L = top();
    inductive_valuation out = *this;
    if (phi.degree() == lv_[L].phi.degree()) {
        if (L == 0) {
            out = depth_zero(K_, elem{} - phi.coeff(0), gamma);
        } else {
            auto pre = prefix(L - 1);
            auto rd = pre.residual_at(L - 1, phi);
            out = pre.push_level(phi, gamma, rd.R);
        }
        out.raw_ = raw_;
        out.raw_.push_back({phi, gamma, true});
        return out;
    }
    out = push_level(phi, gamma, cert.R);
    out.raw_.push_back({phi, gamma, false});
    return out;
}

template <class B>
group_value inductive_valuation<B>::unit_value(int L, epoly const& a) const
{
    if (a.is_zero()) return group_value::infinity(rank());
    if (L == 0) return K_->val(a.coeff(0));
    return eval(L - 1, a);
}

template <class B>
group_value inductive_valuation<B>::eval(int L, epoly const& f) const
{
    if (f.is_zero()) return group_value::infinity(rank());
    auto const& l = lv_.at(L);
    auto c = phi_expansion(f, l.phi, one());
    if (l.gamma.is_infinite()) return unit_value(L, c[0]);
    group_value best = group_value::infinity(rank());
    for (size_t n = 0; n < c.size(); ++n) {
        if (c[n].is_zero()) continue;
        auto v = unit_value(L, c[n]) + l.gamma * (long)n;
        if (v < best) best = v;
    }
    return best;
}

template <class B>
typename inductive_valuation<B>::value_group_info inductive_valuation<B>::value_group_data() const
{
    if (terminal()) fail(error_kind::terminal_valuation, "value group data of a valuation with infinite last value");
    auto const& l = lv_.back();
    value_group_info info;
    info.gamma0_gens = l.g0.basis();
    info.gamma_gens = l.g0.with(l.gamma.coords()).basis();
    info.e = l.e;
    return info;
}

template <class B>
typename inductive_valuation<B>::epoly inductive_valuation<B>::monomial(int L, group_value g, std::vector<long>* exps) const
{
    if (g.is_infinite()) fail(error_kind::not_in_unit_group, "infinite value");
    if (!lv_.at(L).g0.contains(g.coords())) fail(error_kind::not_in_unit_group, g.str());
    std::vector<long> c(L, 0);
    for (int j = L - 1; j >= 0; --j) {
        auto const& lj = lv_[j];
        long k = 0;
        for (; k < lj.e; ++k)
            if (lj.g0.contains((g - lj.gamma * k).coords())) break;
        if (k == lj.e) fail(error_kind::not_in_unit_group, "graded monomial solve failed for " + g.str());
        c[j] = k;
        g = g - lj.gamma * k;
    }
    epoly m = epoly::constant(K_->section(g));
    for (int j = 0; j < L; ++j)
        for (long k = 0; k < c[j]; ++k) m = m * lv_[j].phi;
    if (exps) *exps = c;
    return m;
}

template <class B>
typename inductive_valuation<B>::kelem inductive_valuation<B>::norm(int L, std::vector<long> d) const
{
    kelem s = tower_.one(L);
    for (int j = L - 1; j >= 0; --j) {
        long e = lv_[j].e;
        if (d[j] % e != 0) fail(error_kind::precondition_violated, "graded exponent not divisible by the ramification index");
        long q = d[j] / e;
        if (q == 0) continue;
        s = s * kpow(tower_.embed(tower_.generator(j), j + 1, L), q);
        for (int i = 0; i < j; ++i) d[i] += q * lv_[j].u_exps[i];
    }
    return s;
}

template <class B>
typename inductive_valuation<B>::kelem inductive_valuation<B>::res(int L, epoly const& a) const
{
    if (a.is_zero()) return tower_.from_int(0, L);
    if (a.degree() >= lv_.at(L).phi.degree()) fail(error_kind::degree_too_large, "unit residue needs degree below the key degree");
    if (L == 0) {
        elem c = a.coeff(0);
        return K_->residue(c / K_->section(K_->val(c)));
    }
    auto const& lp = lv_[L - 1];
    auto c = phi_expansion(a, lp.phi, one());
    std::vector<group_value> beta(c.size(), group_value::infinity(rank()));
    group_value m = group_value::infinity(rank());
    for (size_t n = 0; n < c.size(); ++n) {
        if (c[n].is_zero()) continue;
        beta[n] = unit_value(L - 1, c[n]) + lp.gamma * (long)n;
        if (beta[n] < m) m = beta[n];
    }
    std::vector<long> target;
    monomial(L, m, &target);
    kelem sum = tower_.from_int(0, L);
    for (size_t n = 0; n < c.size(); ++n) {
        if (c[n].is_zero() || !(beta[n] == m)) continue;
        std::vector<long> ex;
        monomial(L - 1, unit_value(L - 1, c[n]), &ex);
        ex.push_back((long)n);
        for (int i = 0; i < L; ++i) ex[i] -= target[i];
        sum = sum + tower_.embed(res(L - 1, c[n]), L - 1, L) * norm(L, ex);
    }
    return sum;
}

template <class B>
std::pair<group_value, typename inductive_valuation<B>::kelem> inductive_valuation<B>::unit_residue(epoly const& a) const
{
    if (a.is_zero()) fail(error_kind::precondition_violated, "unit residue of zero");
    return {unit_value(top(), a), res(top(), a)};
}

template <class B>
residual_data<B> inductive_valuation<B>::residual_at(int L, epoly const& g) const
{
    auto const& l = lv_.at(L);
    if (l.gamma.is_infinite()) fail(error_kind::terminal_valuation, "residual polynomial needs a finite last value");
    if (g.is_zero()) fail(error_kind::precondition_violated, "residual polynomial of zero");
    auto c = phi_expansion(g, l.phi, one());
    std::vector<group_value> beta(c.size(), group_value::infinity(rank()));
    residual_data<B> rd;
    rd.value = group_value::infinity(rank());
    for (size_t n = 0; n < c.size(); ++n) {
        if (c[n].is_zero()) continue;
        beta[n] = unit_value(L, c[n]) + l.gamma * (long)n;
        if (beta[n] < rd.value) rd.value = beta[n];
    }
    for (size_t n = 0; n < c.size(); ++n)
        if (!c[n].is_zero() && beta[n] == rd.value) rd.S.push_back((int)n);
    rd.l0 = rd.S.front();
    rd.l = rd.S.back();
    rd.e = l.e;
    if ((rd.l - rd.l0) % l.e != 0) fail(error_kind::precondition_violated, "support of the residual polynomial is not e-periodic");
    rd.d = (int)((rd.l - rd.l0) / l.e);
    std::vector<long> exl;
    monomial(L, unit_value(L, c[rd.l]), &exl);
    kelem ra = res(L, c[rd.l]);
    std::vector<kelem> zeta(rd.d + 1, tower_.from_int(0, L));
    for (int j = 0; j <= rd.d; ++j) {
        int n = rd.l0 + j * (int)l.e;
        if (c[n].is_zero() || !(beta[n] == rd.value)) continue;
        std::vector<long> ex;
        monomial(L, unit_value(L, c[n]), &ex);
        for (int i = 0; i < L; ++i) ex[i] -= exl[i] + (long)(rd.d - j) * l.u_exps[i];
        zeta[j] = res(L, c[n]) / ra * norm(L, ex);
    }
    rd.R = kpoly(zeta);
    return rd;
}

template <class B>
key_certificate<B> inductive_valuation<B>::is_key(epoly const& Q) const
{
    key_certificate<B> kc;
    if (terminal()) fail(error_kind::terminal_valuation, "key polynomials of a valuation with infinite last value");
    int L = top();
    auto const& l = lv_[L];
    if (Q.degree() < 1 || !(Q.lc() == one())) {
        kc.kind = "not monic of positive degree";
        return kc;
    }
    if (Q.degree() == l.phi.degree() && unit_value(L, Q - l.phi) > l.gamma) {
        kc.key = true;
        kc.kind = "same-initial-form";
        kc.R = kpoly::constant(tower_.one(L));
        return kc;
    }
    auto rd = residual_at(L, Q);
    kc.R = rd.R;
    if ((long)Q.degree() != l.e * l.phi.degree() * (long)rd.R.degree()) {
        kc.kind = "degree does not match e*deg(phi)*deg R";
        return kc;
    }
    auto fac = tower_.factor(rd.R, L);
    if (fac.size() == 1 && fac[0].second == 1) {
        kc.key = true;
        kc.kind = "residually-irreducible";
    } else {
        kc.kind = "residual polynomial is reducible";
    }
    return kc;
}

template <class B>
typename inductive_valuation<B>::epoly inductive_valuation<B>::lift_residue(int L, kelem const& lambda) const
{
    if (lambda == kelem{} || lambda == tower_.from_int(0, L)) return {};
    if (L == 0) return epoly::constant(K_->lift(lambda));
    auto const& lp = lv_[L - 1];
    auto w = tower_.decompose(lambda, L);
    epoly sum;
    epoly phik = epoly::constant(one());
    epoly phie = epoly::constant(one());
    for (long i = 0; i < lp.e; ++i) phie = phie * lp.phi;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k > 0) phik = phik * phie;
        if (w[k] == kelem{} || w[k] == tower_.from_int(0, L - 1)) continue;
        std::vector<long> ex;
        auto Mk = monomial(L - 1, lp.gamma * (-(long)k * lp.e), &ex);
        for (int i = 0; i < L - 1; ++i) ex[i] += (long)k * lp.u_exps[i];
        kelem ck = norm(L - 1, ex);
        auto inner = lift_residue(L - 1, w[k] / ck);
        auto r = divrem_monic(Mk * inner, lp.phi).second;
        sum = sum + phik * r;
    }
    return sum;
}

template <class B>
typename inductive_valuation<B>::epoly inductive_valuation<B>::lift_key(kpoly const& psi0) const
{
    int L = top();
    auto const& l = lv_[L];
    if (l.gamma.is_infinite()) fail(error_kind::terminal_valuation, "lifting over a valuation with infinite last value");
    auto psi = psi0.scaled(tower_.one(L) / psi0.lc());
    int f = psi.degree();
    epoly phie = epoly::constant(one());
    for (long i = 0; i < l.e; ++i) phie = phie * l.phi;
    std::vector<epoly> pw(f + 1);
    pw[0] = epoly::constant(one());
    for (int j = 1; j <= f; ++j) pw[j] = pw[j - 1] * phie;
    epoly Q = pw[f];
    for (int j = 0; j < f; ++j) {
        kelem lam = psi.coeff(j);
        if (lam == kelem{} || lam == tower_.from_int(0, L)) continue;
        std::vector<long> ex;
        auto M = monomial(L, l.gamma * ((long)(f - j) * l.e), &ex);
        for (int i = 0; i < L; ++i) ex[i] -= (long)(f - j) * l.u_exps[i];
        kelem nu = norm(L, ex);
        auto cj = divrem_monic(M * lift_residue(L, lam / nu), l.phi).second;
        Q = Q + pw[j] * cj;
    }
    auto check = residual_at(L, Q).R;
    if (!(check == psi)) fail(error_kind::precondition_violated, "lifted key polynomial does not reproduce its residual polynomial");
    return Q;
}

template <class B>
newton_polygon inductive_valuation<B>::polygon(epoly const& phi, epoly const& f) const
{
    auto c = phi_expansion(f, phi, one());
    std::vector<std::pair<int, group_value>> pts;
    for (size_t n = 0; n < c.size(); ++n)
        if (!c[n].is_zero()) pts.push_back({(int)n, evaluate(c[n])});
    return lower_hull(pts);
}

template <class B>
int inductive_valuation<B>::relative_residue_degree(epoly const& phi_next) const
{
    auto kc = is_key(phi_next);
    if (!kc.key) fail(error_kind::not_key_polynomial, str(phi_next));
    auto const& l = lv_.back();
    if (kc.kind == "same-initial-form") return 1;
    return (int)(phi_next.degree() / (l.e * l.phi.degree()));
}

template <class B>
bool inductive_valuation<B>::residual_root_check(inductive_valuation const& nu, epoly const& g) const
{
    int L = top();
    if (terminal() || nu.top() <= L) fail(error_kind::precondition_violated, "second valuation must extend the first by an augmentation");
    for (int j = 0; j <= L; ++j)
        if (!(nu.at(j).phi == lv_[j].phi) || !(nu.at(j).gamma == lv_[j].gamma))
            fail(error_kind::precondition_violated, "second valuation does not extend the first");
    if (!(nu.evaluate(lv_[L].phi) == lv_[L].gamma)) fail(error_kind::precondition_violated, "mu(phi) != nu(phi)");
    if (!(evaluate(g) < nu.evaluate(g))) fail(error_kind::precondition_violated, "mu(g) must be smaller than nu(g)");
    auto R = residual(g).R;
    int T = nu.top();
    auto const& tw = nu.tower();
    kelem z = tw.embed(tw.generator(L), L + 1, T);
    kelem acc = tw.from_int(0, T);
    for (int i = R.degree(); i >= 0; --i) acc = acc * z + tw.embed(R.coeff(i), L, T);
    return acc == tw.from_int(0, T) || acc == kelem{};
}

template <class B>
std::string inductive_valuation<B>::str(epoly const& f, std::string const& var) const
{
    auto fmt = std::function<std::string(elem const&)>([this](elem const& a) { return K_->str(a); });
    return poly_to_string(f, fmt, var);
}

template <class B>
std::string inductive_valuation<B>::kstr(kpoly const& f, int L, std::string const& var) const
{
    auto fmt = std::function<std::string(kelem const&)>([this, L](kelem const& a) { return tower_.str(a, L); });
    return poly_to_string(f, fmt, var);
}

extern template class inductive_valuation<qpadic_field>;
extern template class inductive_valuation<fp_rft_field>;
extern template class inductive_valuation<qt_rank2_field>;

}

#endif
