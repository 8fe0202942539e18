#include <blochkit/linalg.hpp>

#include <algorithm>
#include <numeric>
#include <utility>

namespace blochkit
{

std::string to_string(const Rational &q)
{
    return q.get_str();
}

bool make_primitive(SparseZVec &w)
{
    for (auto it = w.begin(); it != w.end();) {
        if (sgn(it->second) == 0) {
            it = w.erase(it);
        } else {
            ++it;
        }
    }
    if (w.empty()) {
        return false;
    }
    Integer g = 0;
    for (const auto &[c, v] : w) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    if (sgn(w.rbegin()->second) < 0) {
        g = -g;
    }
    if (g != 1) {
        for (auto &[c, v] : w) {
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        }
    }
    return true;
}

SparseZVec clear_denominators(const SparseQVec &v, Integer &s)
{
    s = 1;
    for (const auto &[c, q] : v) {
        mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), q.get_den_mpz_t());
    }
    SparseZVec w;
    for (const auto &[c, q] : v) {
        if (sgn(q) == 0) {
            continue;
        }
        Integer num = q.get_num() * (s / q.get_den());
        w.emplace(c, std::move(num));
    }
    return w;
}

void Echelon::reduce_in_place(SparseZVec &w, Integer *scale) const
{
    // Rows are fully reduced, so a single sweep from the top is enough:
    // eliminating pivot p only touches columns below p.
    auto it = w.end();
    while (it != w.begin()) {
        --it;
        const int col = it->first;
        auto row_it = m_rows.find(col);
        if (row_it == m_rows.end()) {
            continue;
        }
        const SparseZVec &row = row_it->second;
        const Integer a = row.rbegin()->second; // pivot, positive
        const Integer b = it->second;
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        const Integer fa = a / g;
        const Integer fb = b / g;
        if (fa != 1) {
            for (auto &[c, v] : w) {
                v *= fa;
            }
            if (scale) {
                *scale *= fa;
            }
        }
        for (const auto &[c, v] : row) {
            auto [pos, inserted] = w.try_emplace(c, 0);
            pos->second -= fb * v;
            if (sgn(pos->second) == 0) {
                w.erase(pos);
            }
        }
        // Content removal keeps entries small; with a scale to track only
        // the part shared with it can go, so w / scale stays exact.
        Integer content = scale ? *scale : Integer(0);
        for (const auto &[c, v] : w) {
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
            if (content == 1) {
                break;
            }
        }
        if (content > 1) {
            for (auto &[c, v] : w) {
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
            }
            if (scale) {
                *scale /= content;
            }
        }
        it = w.lower_bound(col);
    }
}

bool Echelon::insert(SparseZVec w)
{
    reduce_in_place(w, nullptr);
    if (!make_primitive(w)) {
        return false;
    }
    const int p = w.rbegin()->first;
    const Integer wp = w.rbegin()->second;
    for (auto &[pivot, row] : m_rows) {
        if (pivot < p) {
            continue;
        }
        auto hit = row.find(p);
        if (hit == row.end()) {
            continue;
        }
        const Integer c = hit->second;
        Integer g;
        mpz_gcd(g.get_mpz_t(), wp.get_mpz_t(), c.get_mpz_t());
        const Integer fw = wp / g;
        const Integer fc = c / g;
        for (auto &[col, v] : row) {
            v *= fw;
        }
        for (const auto &[col, v] : w) {
            auto [pos, inserted] = row.try_emplace(col, 0);
            pos->second -= fc * v;
            if (sgn(pos->second) == 0) {
                row.erase(pos);
            }
        }
        make_primitive(row);
    }
    m_rows.emplace(p, std::move(w));
    return true;
}

bool Echelon::insert(const SparseQVec &v)
{
    Integer s;
    return insert(clear_denominators(v, s));
}

std::size_t Echelon::insert_all(const std::vector<SparseQVec> &rows)
{
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> order;
    order.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t bits = 0;
        for (const auto &[c, q] : rows[i]) {
            bits = std::max(bits, mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2));
        }
        order.push_back({{rows[i].size(), bits}, i});
    }
    std::stable_sort(order.begin(), order.end());
    std::size_t grew = 0;
    for (const auto &o : order) {
        grew += insert(rows[o.second]) ? 1 : 0;
    }
    return grew;
}

SparseQVec Echelon::reduce(const SparseQVec &v) const
{
    Integer s;
    SparseZVec w = clear_denominators(v, s);
    reduce_in_place(w, &s);
    SparseQVec out;
    for (const auto &[c, z] : w) {
        Rational q(z, s);
        q.canonicalize();
        out.emplace(c, std::move(q));
    }
    return out;
}

SparseQVec Echelon::residual_functional(int col) const
{
    SparseQVec f;
    f.emplace(col, Rational(1));
    for (const auto &[pivot, row] : m_rows) {
        auto hit = row.find(col);
        if (hit == row.end()) {
            continue;
        }
        Rational q(-hit->second, row.rbegin()->second);
        q.canonicalize();
        f.emplace(pivot, std::move(q));
    }
    return f;
}

std::map<int, SparseQVec> Echelon::normalized_rows() const
{
    std::map<int, SparseQVec> out;
    for (const auto &[pivot, row] : m_rows) {
        SparseQVec r;
        const Integer &p = row.rbegin()->second;
        for (const auto &[c, v] : row) {
            Rational q(v, p);
            q.canonicalize();
            r.emplace(c, std::move(q));
        }
        out.emplace(pivot, std::move(r));
    }
    return out;
}

SparseQVec add_scaled(SparseQVec a, const SparseQVec &b, const Rational &c)
{
    if (sgn(c) == 0) {
        return a;
    }
    for (const auto &[col, v] : b) {
        auto [pos, inserted] = a.try_emplace(col, 0);
        pos->second += c * v;
        if (sgn(pos->second) == 0) {
            a.erase(pos);
        }
    }
    return a;
}

Rational dot(const SparseQVec &a, const SparseQVec &b)
{
    Rational s = 0;
    const SparseQVec &small = a.size() <= b.size() ? a : b;
    const SparseQVec &large = a.size() <= b.size() ? b : a;
    for (const auto &[c, v] : small) {
        auto it = large.find(c);
        if (it != large.end()) {
            s += v * it->second;
        }
    }
    return s;
}

namespace
{

// Builds rows (image shifted above all tag columns | unit tag j).
Echelon tagged_echelon(const std::vector<SparseQVec> &images, int offset)
{
    std::vector<SparseQVec> rows;
    rows.reserve(images.size());
    for (std::size_t j = 0; j < images.size(); ++j) {
        SparseQVec r;
        r.emplace(static_cast<int>(j), Rational(1));
        for (const auto &[c, v] : images[j]) {
            r.emplace(c + offset, v);
        }
        rows.push_back(std::move(r));
    }
    Echelon e;
    e.insert_all(rows);
    return e;
}

} // namespace

std::vector<SparseQVec> kernel_basis(const std::vector<SparseQVec> &images)
{
    const int offset = static_cast<int>(images.size());
    Echelon e = tagged_echelon(images, offset);
    std::vector<SparseQVec> out;
    for (auto &[pivot, row] : e.normalized_rows()) {
        if (pivot < offset) {
            out.push_back(std::move(row));
        }
    }
    return out;
}

bool solve_combination(const std::vector<SparseQVec> &images, const SparseQVec &target, SparseQVec &coeffs)
{
    const int offset = static_cast<int>(images.size());
    Echelon e = tagged_echelon(images, offset);
    SparseQVec shifted;
    for (const auto &[c, v] : target) {
        shifted.emplace(c + offset, v);
    }
    SparseQVec r = e.reduce(shifted);
    coeffs.clear();
    for (const auto &[c, v] : r) {
        if (c >= offset) {
            return false;
        }
        coeffs.emplace(c, -v);
    }
    return true;
}

std::size_t rank_of(const std::vector<SparseQVec> &rows)
{
    Echelon e;
    return e.insert_all(rows);
}

} // namespace blochkit
