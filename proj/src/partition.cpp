#include "lamprob/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lp {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : p_(std::move(parts)) {
    std::sort(p_.begin(), p_.end(), std::greater<int>());
    while (!p_.empty() && p_.back() == 0) p_.pop_back();
    for (int x : p_) {
        if (x < 0) throw std::invalid_argument("Partition: negative part");
        size_ += x;
    }
}

int Partition::multiplicity(int i) const {
    return static_cast<int>(std::count(p_.begin(), p_.end(), i));
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (!p_.empty()) {
        c.assign(p_[0], 0);
        for (int x : p_)
            for (int j = 0; j < x; ++j) ++c[j];
    }
    return Partition(std::move(c));
}

Partition Partition::scaled(int k) const {
    std::vector<int> c = p_;
    for (auto& x : c) x *= k;
    return Partition(std::move(c));
}

Partition Partition::merged(const Partition& o) const {
    std::vector<int> c = p_;
    c.insert(c.end(), o.p_.begin(), o.p_.end());
    return Partition(std::move(c));
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    // Descending lexicographic: larger leading parts come first.
    size_t n = std::min(a.p_.size(), b.p_.size());
    for (size_t i = 0; i < n; ++i)
        if (a.p_[i] != b.p_[i]) return b.p_[i] <=> a.p_[i];
    return a.p_.size() <=> b.p_.size();
}

std::string Partition::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < p_.size(); ++i) os << (i ? "," : "") << p_[i];
    os << "]";
    return os.str();
}

namespace {

void gen(int rem, int maxpart, std::vector<int>& cur, std::vector<Partition>& out) {
    if (rem == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int x = std::min(rem, maxpart); x >= 1; --x) {
        cur.push_back(x);
        gen(rem - x, x, cur, out);
        cur.pop_back();
    }
}

} // namespace

const std::vector<Partition>& partitions_of(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Partition>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> cur;
    if (n >= 0) gen(n, n, cur, out);
    return cache.emplace(n, std::move(out)).first->second;
}

std::vector<Partition> enumerate(int max_size) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_size; ++n) {
        const auto& ps = partitions_of(n);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

mpz_class z_tau_int(const Partition& t) {
    mpz_class z = 1;
    const auto& p = t.parts();
    size_t i = 0;
    while (i < p.size()) {
        size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        int m = static_cast<int>(j - i);
        z *= factorial(m) * zpow(p[i], m);
        i = j;
    }
    return z;
}

Rat z_tau(const Partition& t) { return Rat(z_tau_int(t)); }

bool dominates(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return false;
    int sa = 0, sb = 0;
    int n = std::max(a.length(), b.length());
    for (int i = 0; i < n; ++i) {
        sa += i < a.length() ? a[i] : 0;
        sb += i < b.length() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return true;
}

} // namespace lp
