#include <benchmark/benchmark.h>

#include <random>

#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"
#include "fcw/stallings.hpp"
#include "fcw/verify.hpp"

using namespace fcw;

namespace {

  Word random_word(std::mt19937_64& rng, std::vector<Symbol> const& gens, std::size_t len) {
    Word out;
    while (out.length() < len) {
      out.append(gens[rng() % gens.size()], rng() % 2 ? 1 : -1);
    }
    return out;
  }

  void BM_Fold(benchmark::State& state) {
    std::mt19937_64     rng(1);
    std::vector<Symbol> gens{Symbol::intern("b"), Symbol::intern("c")};
    Alphabet            bc(gens.begin(), gens.end());
    std::vector<Word>   hs;
    for (int i = 0; i < state.range(0); ++i) {
      hs.push_back(random_word(rng, gens, 12));
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(stallings::SubgroupAutomaton::build(bc, hs));
    }
  }
  BENCHMARK(BM_Fold)->Arg(2)->Arg(8)->Arg(32);

  void BM_Intersect(benchmark::State& state) {
    std::mt19937_64     rng(2);
    std::vector<Symbol> gens{Symbol::intern("b"), Symbol::intern("c")};
    Alphabet            bc(gens.begin(), gens.end());
    std::vector<Word>   x, y;
    for (int i = 0; i < state.range(0); ++i) {
      x.push_back(random_word(rng, gens, 8));
      y.push_back(random_word(rng, gens, 8));
    }
    auto a = stallings::SubgroupAutomaton::build(bc, x);
    auto b = stallings::SubgroupAutomaton::build(bc, y);
    for (auto _ : state) {
      benchmark::DoNotOptimize(stallings::intersect(a, b));
    }
  }
  BENCHMARK(BM_Intersect)->Arg(3)->Arg(10);

  void BM_BrittonXi(benchmark::State& state) {
    std::mt19937_64 rng(3);
    auto            x = gadgets::Xi(3);
    std::vector<Word> words;
    for (int i = 0; i < 64; ++i) {
      words.push_back(random_word(rng, x->symbols(), static_cast<std::size_t>(state.range(0))));
    }
    std::size_t i = 0;
    for (auto _ : state) {
      benchmark::DoNotOptimize(britton_reduce(x, words[i++ % words.size()]));
    }
  }
  BENCHMARK(BM_BrittonXi)->Arg(8)->Arg(32)->Arg(128);

  void BM_NormalFormKJ(benchmark::State& state) {
    std::mt19937_64 rng(4);
    auto            k = gadgets::example_5_4(2).k;
    std::vector<Word> words;
    for (int i = 0; i < 64; ++i) {
      words.push_back(random_word(rng, k->symbols(), static_cast<std::size_t>(state.range(0))));
    }
    std::size_t i = 0;
    for (auto _ : state) {
      benchmark::DoNotOptimize(normal_form(k, words[i++ % words.size()]));
    }
  }
  BENCHMARK(BM_NormalFormKJ)->Arg(8)->Arg(32);

  void BM_ClosureMember(benchmark::State& state) {
    auto x = gadgets::Xi(3);
    auto l = gadgets::xi_closure(x, 3, gadgets::Direction::Up);
    auto g = gadgets::tail_witness(3 + state.range(0), 3);
    for (auto _ : state) {
      benchmark::DoNotOptimize(l->member(g));
    }
  }
  BENCHMARK(BM_ClosureMember)->Arg(8)->Arg(64)->Arg(512);

  void BM_Suite(benchmark::State& state, std::string const& name) {
    for (auto _ : state) {
      benchmark::DoNotOptimize(verify::run_suite(name, {}, 50, 1));
    }
  }
  BENCHMARK_CAPTURE(BM_Suite, lemma43, std::string("lemma43"));
  BENCHMARK_CAPTURE(BM_Suite, lemma51, std::string("lemma51"));
  BENCHMARK_CAPTURE(BM_Suite, example54, std::string("example54"));

}  // namespace

BENCHMARK_MAIN();
