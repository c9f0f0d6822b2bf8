#include "tcopt/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace tcopt {

void SignatureTensor::set_sym(std::size_t i, std::size_t j, std::size_t k) {
    std::array<std::size_t, 3> v{i, j, k};
    std::sort(v.begin(), v.end());
    const std::size_t a = v[0], b = v[1], c = v[2];
    if (a == c) {
        rows_[a * n_ + a].set(a, true);
        return;
    }
    if (a == b || b == c) {
        // pair class {x,y}: both mixed orbits, per the closure T_xxy == T_xyy
        const std::size_t x = a, y = c;
        for (std::size_t p : {x, y})
            for (std::size_t q : {x, y})
                for (std::size_t r : {x, y})
                    if (!(p == q && q == r)) rows_[p * n_ + q].set(r, true);
        return;
    }
    rows_[a * n_ + b].set(c, true);
    rows_[a * n_ + c].set(b, true);
    rows_[b * n_ + a].set(c, true);
    rows_[b * n_ + c].set(a, true);
    rows_[c * n_ + a].set(b, true);
    rows_[c * n_ + b].set(a, true);
}

void SignatureTensor::xor_cube(const Factor& u) {
    if (u.size() != n_) throw std::runtime_error("xor_cube: length mismatch");
    if (!u.any()) throw std::runtime_error("xor_cube: zero factor");
    auto supp = u.support();
    for (auto i : supp)
        for (auto j : supp) rows_[i * n_ + j] ^= u;
}

bool SignatureTensor::is_zero() const {
    for (const auto& r : rows_)
        if (r.any()) return false;
    return true;
}

std::size_t SignatureTensor::weight() const {
    std::size_t w = 0;
    for (const auto& r : rows_) w += r.popcount();
    return w;
}

std::vector<std::array<std::uint32_t, 3>> SignatureTensor::entries() const {
    std::vector<std::array<std::uint32_t, 3>> out;
    for (std::uint32_t i = 0; i < n_; ++i)
        if (at(i, i, i)) out.push_back({i, i, i});
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = i + 1; j < n_; ++j)
            if (at(i, j, j)) out.push_back({i, j, j});
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = i + 1; j < n_; ++j)
            for (std::uint32_t k = j + 1; k < n_; ++k)
                if (at(i, j, k)) out.push_back({i, j, k});
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SignatureTensor::distinct_nonzero_slices() const {
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = 0; i < n_; ++i) {
        std::uint64_t h = 0x2545f4914f6cdd1dull;
        bool nonzero = false;
        for (std::size_t j = 0; j < n_; ++j) {
            const auto& r = rows_[i * n_ + j];
            nonzero = nonzero || r.any();
            h = splitmix64(h ^ r.hash());
        }
        if (nonzero) seen.insert(h);
    }
    return seen.size();
}

std::size_t SignatureTensor::flattening_rank() const {
    std::vector<BitVec> flat;
    flat.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        BitVec row(n_ * n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (auto k : rows_[i * n_ + j].support()) row.set(j * n_ + k, true);
        flat.push_back(std::move(row));
    }
    return gf2_rank(flat);
}

std::uint64_t SignatureTensor::hash() const {
    std::uint64_t h = splitmix64(n_);
    for (const auto& r : rows_) h = splitmix64(h ^ r.hash());
    return h;
}

SignatureTensor from_multilinear(const MultilinearPhase& p) {
    SignatureTensor t(p.n);
    for (std::size_t i = 0; i < p.n; ++i)
        if (p.a[i] & 1) t.set_sym(i, i, i);
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = i + 1; j < p.n; ++j)
            if (p.bij(i, j) & 1) t.set_sym(i, j, j);
    for (const auto& c : p.c) t.set_sym(c[0], c[1], c[2]);
    return t;
}

SignatureTensor from_decomposition(std::size_t n, const std::vector<Factor>& factors) {
    SignatureTensor t(n);
    for (const auto& u : factors) t.xor_cube(u);
    return t;
}

SignatureTensor rank_one(const Factor& u) {
    SignatureTensor t(u.size());
    t.xor_cube(u);
    return t;
}

SignatureTensor subtract_rank_one(const SignatureTensor& t, const Factor& u) {
    SignatureTensor out = t;
    out.xor_cube(u);
    return out;
}

SignatureTensor change_of_basis(const SignatureTensor& t, const BitMatrix& m) {
    const std::size_t n = t.n();
    if (m.rows() != n || m.cols() != n) throw std::runtime_error("change_of_basis: shape");
    if (!m.is_invertible()) throw std::runtime_error("change_of_basis: singular matrix");

    // T'_{xyz} = sum_{abc} M_xa M_yb M_zc T_abc, one mode at a time.
    std::vector<BitVec> g1(n * n, BitVec(n));  // g1[a,b][z] = sum_c M_zc T_abc
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g1[a * n + b] = m.mul(t.slice_row(a, b));

    std::vector<BitVec> g2(n * n, BitVec(n));  // g2[a,y][z] = sum_b M_yb g1[a,b][z]
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t y = 0; y < n; ++y)
            for (auto b : m.row(y).support()) g2[a * n + y] ^= g1[a * n + b];

    SignatureTensor out(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            BitVec acc(n);
            for (auto a : m.row(x).support()) acc ^= g2[a * n + y];
            out.rows_[x * n + y] = std::move(acc);
        }
    return out;
}

SignatureTensor permute(const SignatureTensor& t, const std::vector<std::size_t>& sigma) {
    const std::size_t n = t.n();
    if (sigma.size() != n) throw std::runtime_error("permute: wrong length");
    std::vector<bool> hit(n, false);
    for (auto s : sigma) {
        if (s >= n || hit[s]) throw std::runtime_error("permute: not a bijection");
        hit[s] = true;
    }
    SignatureTensor out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (auto k : t.slice_row(i, j).support())
                out.rows_[sigma[i] * n + sigma[j]].set(sigma[k], true);
    return out;
}

namespace {
using nlohmann::ordered_json;
}

std::string tensor_to_json(const SignatureTensor& t) {
    ordered_json j;
    j["n"] = t.n();
    auto ent = t.entries();
    ordered_json arr = ordered_json::array();
    for (const auto& e : ent) arr.push_back({e[0], e[1], e[2]});
    j["entries"] = std::move(arr);
    return j.dump(2) + "\n";
}

SignatureTensor tensor_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    std::size_t n = j.at("n").get<std::size_t>();
    SignatureTensor t(n);
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw std::runtime_error("tensor: bad entry");
        std::array<std::size_t, 3> v{e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                                     e[2].get<std::size_t>()};
        std::sort(v.begin(), v.end());
        if (v[2] >= n) throw std::runtime_error("tensor: entry index out of range");
        t.set_sym(v[0], v[1], v[2]);
    }
    return t;
}

std::string decomposition_to_json(const Decomposition& d) {
    ordered_json j;
    j["n"] = d.n;
    ordered_json fs = ordered_json::array();
    for (const auto& f : d.factors) fs.push_back(f.to_string());
    j["factors"] = std::move(fs);
    ordered_json gs = ordered_json::array();
    auto gadgets = d.gadgets;
    std::sort(gadgets.begin(), gadgets.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    std::size_t in_gadgets = 0;
    std::size_t tof = 0, cs = 0;
    for (const auto& g : gadgets) {
        gs.push_back({{"kind", g.kind == GadgetKind::Toffoli ? "toffoli" : "cs"},
                      {"start", g.start}});
        in_gadgets += gadget_span(g.kind);
        (g.kind == GadgetKind::Toffoli ? tof : cs) += 1;
    }
    j["gadgets"] = std::move(gs);
    j["cost"] = {{"t", d.factors.size() - in_gadgets}, {"toffoli", tof}, {"cs", cs}};
    return j.dump(2) + "\n";
}

Decomposition decomposition_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    Decomposition d;
    d.n = j.at("n").get<std::size_t>();
    for (const auto& f : j.at("factors")) {
        auto v = BitVec::from_string(f.get<std::string>());
        if (v.size() != d.n) throw std::runtime_error("decomposition: factor length mismatch");
        d.factors.push_back(std::move(v));
    }
    if (j.contains("gadgets"))
        for (const auto& g : j.at("gadgets")) {
            std::string kind = g.at("kind").get<std::string>();
            GadgetKind k;
            if (kind == "toffoli") k = GadgetKind::Toffoli;
            else if (kind == "cs") k = GadgetKind::CS;
            else throw std::runtime_error("decomposition: unknown gadget kind " + kind);
            d.gadgets.push_back({k, g.at("start").get<std::size_t>()});
        }
    std::sort(d.gadgets.begin(), d.gadgets.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    return d;
}

}  // namespace tcopt
