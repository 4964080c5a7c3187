#ifndef CONICS_HARNESS_HPP
#define CONICS_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "conics/counting.hpp"
#include "conics/densities.hpp"
#include "conics/norms.hpp"
#include "conics/quadform.hpp"

namespace conics {

inline constexpr const char* kSpecVersion = "1.0";

/// mt19937_64 with an explicit rejection sampler, so draws do not depend on
/// the standard library's distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform integer in [lo, hi].
    i64 uniform(i64 lo, i64 hi);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Product of 1..max_factors elementary matrices I + c E_ij, c in [-entry, entry].
[[nodiscard]] UnimodularMatrix random_unimodular(Rng& rng, int max_factors = 6, i64 entry = 3);
/// Primitive vector with every |a_i| <= bound.
[[nodiscard]] IVec3 random_primitive(Rng& rng, i64 bound);

enum class Shape { special, general };

struct CorpusSpec {
    i64 count = 1;
    i64 height_bound = 1;
    Shape shape = Shape::special;
    std::uint64_t seed = 0;
};

struct CorpusForm {
    std::string id;
    TernaryQuadraticForm form;
    std::optional<SpecialConic> special;      // set for special-shape draws
    std::optional<SpecialConic> base;         // the special form a general draw came from
    std::optional<UnimodularMatrix> applied;  // form = base o applied
};

inline constexpr i64 kMaxCorpusDraws = 1000000;
/// Special draws sample a,b,d,e,f in [-H,H] until Delta != 0. General draws transform a
/// special draw by random_unimodular and redraw the matrix until <Q> <= H.
[[nodiscard]] std::vector<CorpusForm> generate_corpus(const CorpusSpec& spec);

// ------------------------------------------------------------------ batteries

struct BatteryResult {
    std::string name;
    i64 checks = 0;
    std::vector<std::string> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

struct VerificationReport {
    std::vector<BatteryResult> batteries;
    [[nodiscard]] bool passed() const;
    [[nodiscard]] i64 failure_count() const;
};

using RhoFunction = std::function<i64(const SpecialConic&, i64)>;

struct VerifyOptions {
    i64 b_max = 50;
    std::uint64_t seed = 1;
    int adj_samples = 1000;
    int multiplicativity_pairs = 50;
    i64 rho_support_limit = 2000;
    i64 round_trip_radius = 100;
    /// Test-only: replaces rho* wherever the batteries consult it.
    RhoFunction rho_override;
    int threads = 1;
};

/// The special conic the batteries run on, and the norm carried along.
struct BatteryInput {
    std::string id;
    SpecialConic special;
    IsometricNorm norm;
};
[[nodiscard]] BatteryInput battery_input(const CorpusForm& f, const IsometricNorm& norm = IsometricNorm::sup());

BatteryResult battery_decomposition(const std::vector<BatteryInput>& forms, i64 b_max, const RhoFunction& rho);
BatteryResult battery_inversion(const std::vector<BatteryInput>& forms, i64 b_max);
BatteryResult battery_adj(const std::vector<BatteryInput>& forms, int samples, std::uint64_t seed);
BatteryResult battery_multiplicativity(const std::vector<BatteryInput>& forms, int pairs, std::uint64_t seed,
                                       const RhoFunction& rho);
BatteryResult battery_rho_support(const std::vector<BatteryInput>& forms, i64 limit, const RhoFunction& rho);
BatteryResult battery_round_trip(const std::vector<BatteryInput>& forms, i64 radius);
BatteryResult battery_oracle(const std::vector<CorpusForm>& forms, const std::vector<i64>& b_values, int threads = 1);

/// Every (T, n, sigma, tau) of the inversion test grid for one form.
struct LatticeInstance {
    Bound t;
    i64 n, sigma, tau;
};
[[nodiscard]] std::vector<LatticeInstance> lattice_grid(const SpecialConic& s, const std::vector<i64>& t_values,
                                                        i64 max_n = 60, std::size_t classes_per_n = 3);

struct LatticeErrorSummary {
    i64 instances = 0;
    double max_ratio = 0;
    std::string worst;
};
[[nodiscard]] LatticeErrorSummary lattice_error_survey(const std::vector<BatteryInput>& forms,
                                                       const std::vector<i64>& t_values, double volume_tol = 1e-4);

/// Runs every battery on the corpus; B_max <= 100.
[[nodiscard]] VerificationReport verify_identities(const std::vector<CorpusForm>& corpus, const VerifyOptions& options);

// ----------------------------------------------------------------------- sweep

struct SweepRow {
    std::string form_id;
    i64 b = 0;
    i64 n = 0;
    double cb = 0;
    double abs_err = 0;
    double norm_err = 0;
    double elapsed_ms = 0;
};

/// One row per B; c_Q from peyre_constant unless supplied.
[[nodiscard]] std::vector<SweepRow> run_sweep(const std::string& form_id, const TernaryQuadraticForm& q,
                                              const IsometricNorm& norm, const std::vector<i64>& b_values,
                                              std::optional<double> c_q = std::nullopt, double tol = 1e-3);
[[nodiscard]] std::string sweep_csv(const std::vector<SweepRow>& rows);
inline constexpr const char* kSweepHeader = "form_id,B,N,cB,abs_err,norm_err,elapsed_ms";

/// Runs f(i) for i in [0, count) on up to `threads` threads; results stay in index order.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& f);

// ------------------------------------------------------------------------ JSON

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const TernaryQuadraticForm& q);
[[nodiscard]] Json to_json(const SpecialConic& s);
[[nodiscard]] Json to_json(const IsometricNorm& n);
[[nodiscard]] Json to_json(const IMat3& m);
[[nodiscard]] Json to_json(const CorpusForm& f);
[[nodiscard]] Json to_json(const DensityReport& r);
[[nodiscard]] Json to_json(const CountReport& r);
[[nodiscard]] Json to_json(const VerificationReport& r);

/// Accepts {"c200",...,"c002"}, {"a","b","d","e","f"}, or either wrapped in {"form": ...}.
[[nodiscard]] TernaryQuadraticForm form_from_json(const Json& j);
[[nodiscard]] std::optional<SpecialConic> special_from_json(const Json& j);
/// {"g": [[...],[...],[...]]} or {"norm": {...}}; entries are integers or "p/q" strings.
[[nodiscard]] IsometricNorm norm_from_json(const Json& j);

}  // namespace conics

#endif  // CONICS_HARNESS_HPP
