#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcw/subgroup.hpp"

namespace fcw::verify {

  //! Suite parameters. Unset fields take the suite's default.
  struct SuiteParams {
    std::optional<std::int64_t> m;
    std::optional<std::size_t>  r;
    //! Associated subgroups A_i of F(b, c), one per stable letter, from
    //! the menu "b", "c", "bc2" (<b, c^2>) and "G" (all of F(b, c)).
    std::vector<std::string> assoc;
    //! "up", "down" or "both" (lemma51, lemma52).
    std::string dir = "both";
    //! "no", "yes" or "both" (example54).
    std::string with_a = "both";
    //! Maximal length of random words.
    std::size_t length = 8;
    //! Drops the first generator of A_1 (and with it one relator) to check
    //! that suites notice a broken scheme.
    bool         mutate = false;
    SearchBudget budget;
  };

  struct Counterexample {
    std::string input;
    std::string expected;
    std::string got;
  };

  struct VerificationReport {
    std::string                 suite;
    std::string                 params;  // JSON object text
    std::size_t                 samples = 0;
    std::uint64_t               seed    = 0;
    std::size_t                 pass    = 0;
    std::size_t                 fail    = 0;
    std::size_t                 unknown = 0;
    std::vector<Counterexample> counterexamples;
    std::int64_t                millis = 0;

    bool ok() const noexcept { return fail == 0 && unknown == 0; }
    //! {suite, params, samples, seed, pass, fail, unknown, counterexamples,
    //! millis}
    std::string to_json(int indent = 2) const;
  };

  std::vector<std::string> const& suite_names();

  //! Throws Error for an unknown suite or parameters it cannot use.
  VerificationReport run_suite(std::string const& suite,
                               SuiteParams const& params,
                               std::size_t        samples,
                               std::uint64_t      seed,
                               std::size_t        jobs = 1);

  //! Generator seeded from (seed, index) only.
  std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

}  // namespace fcw::verify
