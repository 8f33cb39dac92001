#pragma once

#include <map>
#include <memory>

#include "qwk/ring.hpp"

namespace qwk {

struct TruncationSet {
    long m = 1;
    std::vector<long> divisors;  // ascending, contains 1 and m

    explicit TruncationSet(long m_) : m(m_), divisors(divisors_of(m_)) {}
    size_t size() const { return divisors.size(); }
    size_t index_of(long d) const;
};

// Universal structure polynomials for W_m: addition, multiplication, negation
// and Frobenius coordinates, solved over Z from ghost compatibility. The
// variable layout is X_{d1},...,X_{dk},Y_{d1},...,Y_{dk} in ascending divisor
// order; Frobenius polynomials use only the X block.
class WittTable {
  public:
    long m;
    TruncationSet trunc;
    std::vector<QPoly> add_poly;             // per divisor index
    std::vector<QPoly> mul_poly;
    std::vector<QPoly> neg_poly;
    std::map<long, std::vector<QPoly>> frob_poly;  // k -> coords over divisors of m/k

    // Memoized; builds (or loads from QWITT_CACHE_DIR) on first use.
    static std::shared_ptr<const WittTable> get(long m);
    static void set_cap(long cap);
    static long cap();

    std::string serialize() const;
    // Parses and re-verifies the defining ghost identities; throws on tampering.
    static WittTable deserialize(const std::string& text);

    std::vector<std::string> var_names() const;  // X/Y names for printing

  private:
    explicit WittTable(long m_) : m(m_), trunc(m_) {}
    static WittTable build(long m);
    void verify() const;  // ghost identities, symbolically
};

// Witt vectors with coordinates in an arbitrary coefficient ring.
struct WittVec {
    long m = 1;
    std::vector<QPoly> coords;  // one per divisor, ascending
};

class WittOps {
  public:
    WittOps(const Ring& ring, long m);

    const Ring& ring() const { return ring_; }
    long m() const { return m_; }
    const TruncationSet& trunc() const { return table_->trunc; }

    WittVec zero() const;
    WittVec from_coords(std::vector<QPoly> coords) const;
    WittVec teichmuller(const QPoly& r) const;

    WittVec add(const WittVec& x, const WittVec& y) const;
    WittVec sub(const WittVec& x, const WittVec& y) const;
    WittVec neg(const WittVec& x) const;
    WittVec mul(const WittVec& x, const WittVec& y) const;
    WittVec mul_int(const WittVec& x, const Int& c) const;
    bool equal(const WittVec& x, const WittVec& y) const;
    bool is_zero(const WittVec& x) const;

    QPoly ghost(const WittVec& x, long n) const;
    std::vector<QPoly> all_ghosts(const WittVec& x) const;

    // F_k : W_m -> W_{m/k}; result lives at truncation m/k.
    WittVec frobenius(const WittVec& x, long k) const;
    // V_k : W_{m/k} -> W_m.
    WittVec verschiebung(const WittVec& x, long k) const;
    WittVec restriction(const WittVec& x, long d) const;

    // c_d with x = sum_{d|m} V_{m/d}(tau_d(c_d)); c_d = x_{m/d}.
    std::map<long, QPoly> decompose(const WittVec& x) const;
    // Recompose via teichmuller/verschiebung/add (test oracle for decompose).
    WittVec recompose(const std::map<long, QPoly>& parts) const;

    std::string to_string(const WittVec& x) const;
    WittVec parse(const std::string& text) const;

  private:
    Ring ring_;
    long m_;
    std::shared_ptr<const WittTable> table_;

    QPoly eval(const QPoly& universal, const std::vector<QPoly>& xs,
               const std::vector<QPoly>& ys) const;
};

}  // namespace qwk
