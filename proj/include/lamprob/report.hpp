#pragma once

#include "lamprob/charstat.hpp"
#include "lamprob/cyclo.hpp"
#include "lamprob/hyperstat.hpp"
#include "lamprob/randmat.hpp"
#include "lamprob/symfunc.hpp"
#include "lamprob/witt.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lp {

// Thrown for malformed requests and infeasible sizes; the CLI maps it to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// |z| for a congruence modulo [z]; z is either rational or a power of u = q^{1/2}.
struct Modulus {
    std::string label;
    long double abs = 0;

    static Modulus rational(const Rat& z);
    static Modulus u_power(long q, long k);
    Modulus squared() const;
};

// Bound a fitted M may not exceed unless the caller overrides it.
inline constexpr long double kDefaultMCap = 16.0L;
// Relative slack on the float comparison magnitude <= M |z|^i.
inline constexpr long double kFloatSlack = 1e-12L;
// Largest accepted r_N / r_{N-1}, where r_i is the worst |a_i - b_i| / |z|^i at
// ghost i. An error one half-power of q too large grows by q^{1/2} >= sqrt(2).
inline constexpr long double kGrowthCap = 1.41421356237309504880L;

struct CongruenceRecord {
    std::string key;
    int ghost = 1;
    std::string difference;
    long double magnitude = 0;
    long double bound = 0;
    bool pass = true;
};

// a_i = b_i + O(|z|^i) on every coefficient, i <= N. M is fitted as the largest
// |a_i - b_i| / |z|^i. The check passes iff M <= M_cap and the worst ratio has
// stopped growing: r_N < kGrowthCap * r_{N-1}.
struct CongruenceReport {
    std::string label;
    Modulus modulus;
    int trunc = 0;
    int length = 0;
    long double M = 0;
    long double M_cap = kDefaultMCap;
    std::vector<long double> ratios; // r_1..r_N
    long double growth = 0;          // r_N / r_{N-1}
    std::vector<CongruenceRecord> records;
    bool pass = true;

    nlohmann::ordered_json to_json() const;
};

template <class Key>
CongruenceReport congruence_check(const std::vector<Series<Key, CycloHalf>>& A, const std::vector<Series<Key, CycloHalf>>& B,
                                  const Modulus& z, int N, long double M_cap = kDefaultMCap, const std::string& label = "");

// Lift a Q-series to one CycloHalf series per ghost 1..N (constant in the ghost index).
template <class Key> std::vector<Series<Key, CycloHalf>> constant_ghosts(const Series<Key, Rat>& f, int N) {
    return std::vector<Series<Key, CycloHalf>>(N, f.map_coeffs([](const Rat& r) { return CycloHalf(r); }));
}
std::vector<SymSeries<CycloHalf>> to_cyclo(const std::vector<SymSeries<Rat>>& v);

// Limit MGFs of the two families against their random-matrix counterparts.
// chars: ell = 2 vs Exp(e_2), ell > 2 vs Exp(h_1 hbar_1), modulo [u^half_power]
// (default [q^{-1}]).
CongruenceReport compare_chars(long q, int ell, int D, int N, long double M_cap = kDefaultMCap, long half_power = -2);
// vanishing cohomology of hypersurfaces in P^{n+1} modulo [q^{-1/2}]:
// n = 0 vs Exp(h_2 + h_3 + ...), n odd vs Exp(e_2), n > 0 even vs Exp(h_2).
CongruenceReport compare_hypersurface(long q, int n, int D, int N, long double M_cap = kDefaultMCap);

// First-order approximations for a in [z] Lambda: Exp(a) = 1 + a and
// Log(1 + a) = a modulo [z^2], with a separately fitted M' for each.
struct ExpLogReport {
    CongruenceReport input; // a itself modulo [z]
    CongruenceReport exp;
    CongruenceReport log;
    bool pass() const { return input.pass && exp.pass && log.pass; }
};
ExpLogReport exp_log_approx_check(const SymSeries<WittTrunc<CycloHalf>>& a, const Modulus& z, int N,
                                  long double M_cap = kDefaultMCap);

// Finite Z-linear combination of Teichmuller elements sum c_z [z], the
// degree-zero part of the stable-homology computation.
class TeichSum {
public:
    TeichSum() = default;
    static TeichSum teich(const Rat& z, long c = 1);
    TeichSum& operator+=(const TeichSum& o);
    friend TeichSum operator+(TeichSum a, const TeichSum& b) { return a += b; }
    friend TeichSum operator-(TeichSum a, const TeichSum& b) { return a += b.scaled(-1); }
    friend TeichSum operator*(const TeichSum& a, const TeichSum& b);
    TeichSum scaled(long c) const;
    // Log_sigma(1 + [z]) = [z] - [z^2]
    static TeichSum log_one_plus_teich(const Rat& z);
    // Ghost i of Exp_sigma(sum c_z [z]) = prod (1 - z^i)^{-c_z}; needs |z| < 1 wherever c_z != 0.
    Rat exp_ghost(int i) const;
    Rat ghost(int i) const;
    std::string str() const;

private:
    std::map<Rat, long> c_;
};

struct StableHomologyReport {
    long q = 2;
    int D = 0, N = 0;
    TeichSum constant;        // the degree-zero argument on the right
    std::vector<SymSeries<Rat>> lhs, rhs; // per ghost
    bool pass = false;
};
// omega((1 - [q^{-1}]) (1 + ([q]/([q]+1)) sum_{k>=1} e_{2k})^{[q]}), with the power as an
// Euler product over A^1, against Exp([q] Log([q^{-1}] + sum_{k>=0} h_{2k}) - 1) by
// plethystic Exp/Log.
StableHomologyReport stable_homology_identity(long q, int D, int N);

struct IdentityResult {
    std::string name;
    int trials = 0;
    int passed = 0;
    bool pass() const { return trials > 0 && passed == trials; }
};
// Randomized exact identities: Exp/Log round trips, power laws, Euler-product
// powers, res_k, projection formula, omega on even series, h/e inversion.
std::vector<IdentityResult> run_identity_suite(std::uint64_t seed, int trials);

enum class Format { json, csv, table };
Format parse_format(const std::string& s);

// Flat configuration shared by the CLI subcommands and config files.
struct Config {
    std::map<std::string, std::string> values;

    static Config parse_text(const std::string& text); // key=value lines or a JSON object
    static Config load(const std::string& path);
    void merge(const Config& o); // o overrides

    bool has(const std::string& k) const { return values.count(k) > 0; }
    std::string get(const std::string& k, const std::string& dflt) const;
    long get_long(const std::string& k, long dflt) const;
    std::string require(const std::string& k) const;
    long require_long(const std::string& k) const;
};

struct ExperimentResult {
    nlohmann::ordered_json doc;
    std::string csv;
    std::string table;
    bool pass = true;

    std::string render(Format f) const;
};

// command in {randmat, chars, hypersurf, identities, compare}. Throws UsageError
// on bad input; writes <out_dir>/<command>.<ext> when out_dir is set.
ExperimentResult run_experiment(const std::string& command, const Config& cfg);

std::string format_ld(long double x);

} // namespace lp
