#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "lauricella/scanner.hpp"

using namespace lauricella;

namespace {

std::string csv(const std::vector<CensusEntry>& e) {
  std::ostringstream os;
  write_census_csv(os, e);
  return os.str();
}

// Independent generator: every tuple in {1..D-1}^{n+1}, sorted and deduplicated.
std::set<std::vector<long>> naive(std::size_t n, long denom) {
  std::set<std::vector<long>> out;
  std::vector<long> t(n + 1, 1);
  while (true) {
    auto s = t;
    std::sort(s.begin(), s.end());
    out.insert(s);
    std::size_t i = 0;
    while (i <= n && ++t[i] == denom) t[i++] = 1;
    if (i > n) break;
  }
  return out;
}

}  // namespace

TEST(Scanner, ContainsNonArithmeticExample) {
  auto entries = enumerate({3, 12, {ScanFilter::Int, ScanFilter::Hyperbolic}});
  auto it = std::find_if(entries.begin(), entries.end(),
                         [](const CensusEntry& e) { return e.numerators == std::vector<long>{3, 3, 3, 7}; });
  ASSERT_NE(it, entries.end());
  EXPECT_FALSE(it->arithmetic->arithmetic);
  EXPECT_EQ(*it->cusps, 0u);
}

TEST(Scanner, TenSixthsIsUnique) {
  auto entries = enumerate({10, 12, {ScanFilter::HalfInt, ScanFilter::Hyperbolic}});
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].numerators, std::vector<long>(11, 2));
}

TEST(Scanner, ElevenIsEmpty) {
  EXPECT_TRUE(enumerate({11, 12, {ScanFilter::HalfInt, ScanFilter::Hyperbolic}}).empty());
}

TEST(Scanner, CompleteAgainstNaiveGenerator) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (long d = 2; d <= 8; ++d) {
      auto entries = enumerate({n, d, {}});
      std::set<std::vector<long>> got;
      for (const auto& e : entries) got.insert(e.numerators);
      EXPECT_EQ(got.size(), entries.size());  // no duplicates
      EXPECT_EQ(got, naive(n, d)) << "n=" << n << " D=" << d;
      EXPECT_TRUE(std::is_sorted(entries.begin(), entries.end(),
                                 [](const CensusEntry& a, const CensusEntry& b) { return a.numerators < b.numerators; }));
    }
  }
}

TEST(Scanner, AgreesWithExactPredicates) {
  for (const auto& e : enumerate({3, 10, {}})) {
    auto ws = e.weights();
    EXPECT_EQ(e.label, classify(ws));
    auto fin = check_conditions(ws, IndexRange::FiniteOnly);
    EXPECT_EQ(e.int_ok, fin.int_ok) << ws.str();
    EXPECT_EQ(e.half_int_ok, fin.half_int_ok) << ws.str();
    if (e.label == CaseLabel::Hyperbolic) {
      auto inf = check_conditions(ws, IndexRange::IncludeInfinity);
      EXPECT_EQ(*e.int_inf_ok, inf.int_ok);
      EXPECT_EQ(*e.half_int_inf_ok, inf.half_int_ok);
      EXPECT_EQ(*e.cusps, cusp_splittings(ws).size());
    } else {
      EXPECT_FALSE(e.cusps.has_value());
    }
  }
}

TEST(Scanner, DeterministicAcrossThreads) {
  ScanOptions a{4, 12, {ScanFilter::Hyperbolic}, 1};
  ScanOptions b = a;
  b.threads = 4;
  EXPECT_EQ(csv(enumerate(a)), csv(enumerate(b)));
  EXPECT_EQ(census_json(enumerate(a)).dump(), census_json(enumerate(b)).dump());
}

TEST(Scanner, CapAndFilterErrors) {
  try {
    enumerate({2, 500, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceCap);
  }
  EXPECT_THROW(parse_scan_filter("bogus"), Error);
}

TEST(Report, EmptyIsHeaderOnly) {
  EXPECT_EQ(csv({}), std::string(census_csv_header()) + "\n");
}

TEST(Report, SixthsFamilyCases) {
  std::string letters;
  for (std::size_t n = 1; n <= 10; ++n) {
    auto entries = enumerate({n, 6, {}});
    auto sixths = std::find_if(entries.begin(), entries.end(), [&](const CensusEntry& e) {
      return e.numerators == std::vector<long>(n + 1, 1);
    });
    ASSERT_NE(sixths, entries.end());
    letters += case_letter(sixths->label);
  }
  EXPECT_EQ(letters, "EEEEPHHHHH");
}

TEST(Report, WitnessColumn) {
  auto entries = enumerate({3, 12, {ScanFilter::NonArithmetic}});
  std::string text = csv(entries);
  EXPECT_NE(text.find("\"1/4,1/4,1/4,7/12\",H,true,true,true,true,0,false,\"r=5: 5/3, 7/3; r=7: 7/3, 5/3\"\n"),
            std::string::npos);
}
