#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kfhe/metrics.hpp"
#include "kfhe/rng.hpp"

using namespace kfhe;

TEST_CASE("confusion counts land in [true][predicted]") {
  SUBCASE("perfect predictions are diagonal") {
    const std::vector<int> truth{0, 1, 2, 1, 0};
    const ConfusionMatrix cm = confusion(truth, truth, 3);
    for (int t = 0; t < 3; ++t)
      for (int p = 0; p < 3; ++p)
        CHECK(cm.at(t, p) == (t == p ? (t == 0 ? 2 : t == 1 ? 2 : 1) : 0));
    CHECK(cm.total() == 5);
  }
  SUBCASE("all predicted class 0 fills a single column") {
    const std::vector<int> truth{0, 1, 1, 2};
    const std::vector<int> predicted{0, 0, 0, 0};
    const ConfusionMatrix cm = confusion(truth, predicted, 3);
    for (int t = 0; t < 3; ++t)
      for (int p = 1; p < 3; ++p) CHECK(cm.at(t, p) == 0);
    CHECK(cm.at(0, 0) == 1);
    CHECK(cm.at(1, 0) == 2);
    CHECK(cm.at(2, 0) == 1);
  }
  SUBCASE("hand-counted example") {
    const std::vector<int> truth{1, 0, 0, 1};
    const std::vector<int> predicted{1, 0, 1, 1};
    const ConfusionMatrix cm = confusion(truth, predicted, 2);
    CHECK(cm.at(0, 0) == 1);
    CHECK(cm.at(0, 1) == 1);
    CHECK(cm.at(1, 0) == 0);
    CHECK(cm.at(1, 1) == 2);
  }
  SUBCASE("length mismatch is rejected") {
    const std::vector<int> truth{0, 1};
    const std::vector<int> predicted{0};
    CHECK_THROWS_AS(static_cast<void>(confusion(truth, predicted, 2)), std::invalid_argument);
  }
}

TEST_CASE("macro_f1 hand-computed values") {
  SUBCASE("perfect predictions with every class present") {
    const std::vector<int> truth{0, 1, 2, 2};
    CHECK(macro_f1(confusion(truth, truth, 3)) == doctest::Approx(1.0));
  }
  SUBCASE("worked 2x2 example") {
    // cm [[1,1],[0,2]]: class0 P=1, R=1/2, F1=2/3; class1 P=2/3, R=1, F1=4/5.
    const std::vector<int> truth{1, 0, 0, 1};
    const std::vector<int> predicted{1, 0, 1, 1};
    const double f1 = macro_f1(confusion(truth, predicted, 2));
    CHECK(f1 == doctest::Approx((2.0 / 3.0 + 0.8) / 2.0));
    CHECK(f1 == doctest::Approx(0.733333).epsilon(1e-5));
  }
  SUBCASE("everything wrong in two classes scores zero") {
    const std::vector<int> truth{0, 1, 0, 1};
    const std::vector<int> predicted{1, 0, 1, 0};
    CHECK(macro_f1(confusion(truth, predicted, 2)) == doctest::Approx(0.0));
  }
  SUBCASE("declared-but-absent classes still divide the average") {
    const std::vector<int> truth{0, 1, 0, 1};
    const ConfusionMatrix cm = confusion(truth, truth, 4);
    // classes 2 and 3 are absent and contribute 0 each.
    CHECK(macro_f1(cm) == doctest::Approx(0.5));
  }
}

TEST_CASE("macro_f1 is invariant under class relabelling") {
  Rng rng(2024);
  for (int round = 0; round < 30; ++round) {
    const int c = 2 + static_cast<int>(rng.next_below(5));
    const std::size_t n = 5 + rng.next_below(40);
    std::vector<int> truth(n);
    std::vector<int> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.next_below(c));
      predicted[i] = static_cast<int>(rng.next_below(c));
    }
    std::vector<int> perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = c; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);

    std::vector<int> truth_p(n);
    std::vector<int> predicted_p(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth_p[i] = perm[truth[i]];
      predicted_p[i] = perm[predicted[i]];
    }
    const double original = macro_f1(confusion(truth, predicted, c));
    const double permuted = macro_f1(confusion(truth_p, predicted_p, c));
    CHECK(original == doctest::Approx(permuted).epsilon(1e-12));
    CHECK(original >= 0.0);
    CHECK(original <= 1.0);
  }
}

TEST_CASE("misclassification_rate counts disagreements") {
  const std::vector<int> truth{0, 1, 2, 1};
  CHECK(misclassification_rate(truth, truth) == 0.0);
  const std::vector<int> wrong{1, 0, 0, 0};
  CHECK(misclassification_rate(truth, wrong) == 1.0);
  const std::vector<int> one_off{0, 1, 2, 0};
  CHECK(misclassification_rate(truth, one_off) == 0.25);
}

TEST_CASE("average_ranks handles ties and strict orders") {
  SUBCASE("two equal scores share rank 1.5") {
    const RankTable table = average_ranks({"a", "b"}, {"d1"}, {{0.9, 0.9}}, true);
    CHECK(table.ranks[0][0] == doctest::Approx(1.5));
    CHECK(table.ranks[0][1] == doctest::Approx(1.5));
  }
  SUBCASE("strictly ordered scores rank 1..m") {
    const RankTable table =
        average_ranks({"a", "b", "c"}, {"d1"}, {{0.5, 0.9, 0.7}}, true);
    CHECK(table.ranks[0][0] == 3.0);
    CHECK(table.ranks[0][1] == 1.0);
    CHECK(table.ranks[0][2] == 2.0);
  }
  SUBCASE("lower-is-better flips the order") {
    const RankTable table = average_ranks({"a", "b"}, {"d1"}, {{0.2, 0.4}}, false);
    CHECK(table.ranks[0][0] == 1.0);
    CHECK(table.ranks[0][1] == 2.0);
  }
  SUBCASE("missing cells are rejected") {
    CHECK_THROWS_AS(
        static_cast<void>(average_ranks({"a", "b"}, {"d1"}, {{0.2}}, true)),
        std::invalid_argument);
  }
}

TEST_CASE("per-dataset rank sums equal m(m+1)/2 with ties included") {
  Rng rng(606);
  for (int round = 0; round < 20; ++round) {
    const std::size_t m = 2 + rng.next_below(6);
    const std::size_t d = 1 + rng.next_below(5);
    std::vector<std::string> algorithms(m);
    for (std::size_t a = 0; a < m; ++a) algorithms[a] = "a" + std::to_string(a);
    std::vector<std::string> datasets(d);
    for (std::size_t i = 0; i < d; ++i) datasets[i] = "d" + std::to_string(i);
    std::vector<std::vector<double>> scores(d, std::vector<double>(m));
    for (auto& row : scores)
      for (double& v : row) v = std::floor(rng.next_double() * 4.0) / 4.0;  // force ties

    const RankTable table = average_ranks(algorithms, datasets, scores, true);
    const double expected = static_cast<double>(m * (m + 1)) / 2.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double sum = std::accumulate(table.ranks[i].begin(), table.ranks[i].end(), 0.0);
      CHECK(sum == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}
