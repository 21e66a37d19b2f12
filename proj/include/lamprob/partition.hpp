#pragma once

#include "lamprob/rat.hpp"

#include <compare>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace lp {

class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return p_; }
    int size() const { return size_; }
    int length() const { return static_cast<int>(p_.size()); }
    int multiplicity(int i) const;
    int operator[](int j) const { return p_[j]; }
    bool empty() const { return p_.empty(); }

    Partition conjugate() const;
    Partition scaled(int k) const;            // k * tau
    Partition merged(const Partition& o) const; // union of parts

    // Graded, then lexicographically descending within a degree.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);
    friend bool operator==(const Partition& a, const Partition& b) { return a.p_ == b.p_; }

    std::string str() const;

private:
    std::vector<int> p_;
    int size_ = 0;
};

// All partitions of n, lexicographically descending.
const std::vector<Partition>& partitions_of(int n);
// All partitions with |tau| <= max_size in the canonical order.
std::vector<Partition> enumerate(int max_size);

Rat z_tau(const Partition& t);
mpz_class z_tau_int(const Partition& t);
bool dominates(const Partition& a, const Partition& b);

// Key for the two-alphabet ring: (tau, tau-bar).
struct PartPair {
    Partition a, b;
    int size() const { return a.size() + b.size(); }
    friend std::strong_ordering operator<=>(const PartPair& x, const PartPair& y) {
        if (auto c = x.size() <=> y.size(); c != 0) return c;
        if (auto c = x.a <=> y.a; c != 0) return c;
        return x.b <=> y.b;
    }
    friend bool operator==(const PartPair& x, const PartPair& y) { return x.a == y.a && x.b == y.b; }
    std::string str() const { return "(" + a.str() + "|" + b.str() + ")"; }
};

} // namespace lp
