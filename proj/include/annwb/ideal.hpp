#ifndef ANNWB_IDEAL_HPP
#define ANNWB_IDEAL_HPP

#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "annwb/ring.hpp"

namespace annwb {

// Write-once cache slot shared by copies of an ideal value. The stored basis
// stays alive for the lifetime of the slot, so references into it are stable.
class GbSlot {
  public:
    template <typename Fn> const std::vector<Poly>& get_or_compute(Fn&& fn) {
        {
            std::lock_guard<std::mutex> lk(m_);
            if (value_) return *value_;
        }
        auto v = std::make_shared<const std::vector<Poly>>(fn());
        std::lock_guard<std::mutex> lk(m_);
        if (!value_) value_ = v;
        return *value_;
    }

  private:
    std::mutex m_;
    std::shared_ptr<const std::vector<Poly>> value_;
};

// Ideal of a (possibly quotient) ring. Generators are stored reduced modulo
// the quotient relations; the cached basis is the reduced Groebner basis of
// the ideal's ambient preimage (quotient generators adjoined).
struct Ideal {
    Ring ring;
    std::vector<Poly> gens;
    std::shared_ptr<GbSlot> slot = std::make_shared<GbSlot>();
};

Ideal make_ideal(const Ring& r, std::vector<Poly> gens);
Ideal zero_ideal(const Ring& r);
Ideal unit_ideal(const Ring& r);

// Reduced ambient Groebner basis (includes quotient relations).
const std::vector<Poly>& groebner_basis(const Ideal& I);

// The basis presented as elements of the quotient ring: quotient-reduced,
// zero elements dropped. Equal to groebner_basis for polynomial rings.
std::vector<Poly> display_basis(const Ideal& I);

Poly normal_form(const Poly& f, const Ideal& I);
bool ideal_member(const Poly& f, const Ideal& I);

bool ideal_is_unit(const Ideal& I);
bool ideal_is_zero(const Ideal& I);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);
Ideal ideal_intersection(const Ideal& I, const Ideal& J);
Ideal ideal_quotient(const Ideal& I, const Poly& f);
Ideal ideal_quotient(const Ideal& I, const Ideal& J);
Ideal ideal_saturation(const Ideal& I, const Poly& f);
Ideal ideal_saturation(const Ideal& I, const Ideal& J);
Ideal ideal_eliminate(const Ideal& I, const std::vector<int>& var_indices);
Ideal ideal_power(const Ideal& I, int e);

bool ideal_contains(const Ideal& I, const Ideal& J); // J subseteq I
bool ideal_equal(const Ideal& I, const Ideal& J);
bool radical_member(const Ideal& I, const Poly& f);  // f in sqrt(I)
bool radical_contains(const Ideal& I, const Ideal& J); // J subseteq sqrt(I)

// Krull dimension of R/I; dim_neg_infinity() for the unit ideal.
int dimension(const Ideal& I);
constexpr int dim_neg_infinity() { return std::numeric_limits<int>::min(); }
int ring_dimension(const Ring& r); // dim of the presented ring itself

struct PrimeIdeal {
    Ideal ideal;
    bool variable_generated = false; // certificate: prime by inspection
};

// `asserted` certifies primality on the caller's authority. Without it, only
// variable-generated ideals in a non-quotient ring are accepted.
PrimeIdeal make_prime(const Ideal& I, bool asserted = false);

// height p/q = dim R/q - dim R/p for primes q subseteq p (affine domains).
int height_between(const PrimeIdeal& p, const PrimeIdeal& q);
int prime_height(const PrimeIdeal& p); // height p/(minimal prime below), = dim R - dim R/p

// An element of `a` lying in no listed prime; smallest candidate under the
// documented enumeration of nonnegative generator combinations.
Poly prime_avoid(const Ideal& a, const std::vector<PrimeIdeal>& primes);

// Auxiliary-variable extension with an elimination block in front.
struct ExtRing {
    Ring ext;
    int orig_arity;
};
ExtRing extend_ring(const Ring& ambient, int n_aux);
Poly lift_to_ext(const ExtRing& e, const Poly& p);
bool ext_free_of_aux(const ExtRing& e, const Poly& p);
Poly restrict_from_ext(const ExtRing& e, const Poly& p);

// Optional on-disk Groebner cache (content-hash keyed).
void set_gb_cache_dir(const std::string& dir); // empty disables
std::string gb_cache_dir();

} // namespace annwb

#endif
