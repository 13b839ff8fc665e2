#include <gtest/gtest.h>

#include "btlab/field.hpp"

using namespace btlab;

namespace {

bool has_violation(const FieldDescriptor& d, const std::string& key) {
  for (const auto& v : validate(d))
    if (v.invariant == key) return true;
  return false;
}

}  // namespace

TEST(FieldDescriptor, ValidExamples) {
  EXPECT_TRUE(validate(FieldDescriptor::mixed(2, 1, 1)).empty());
  EXPECT_TRUE(validate(FieldDescriptor::mixed(3, 2, 4)).empty());
  EXPECT_TRUE(validate(FieldDescriptor::equal_characteristic(5, 1)).empty());
  EXPECT_TRUE(validate(FieldDescriptor::mixed(2, 1, 1, 2, 1)).empty());
  EXPECT_TRUE(validate(FieldDescriptor::mixed(2, 1, 1, 3, 2)).empty());
}

TEST(FieldDescriptor, Violations) {
  auto d = FieldDescriptor::mixed(4, 1, 1);
  EXPECT_TRUE(has_violation(d, "p_prime"));
  d = FieldDescriptor::mixed(2, 0, 1);
  EXPECT_TRUE(has_violation(d, "f_positive"));
  d = FieldDescriptor::mixed(2, 1, 1);
  d.delta = 4;
  d.r = 2;
  EXPECT_TRUE(has_violation(d, "r_generator"));
  d.r = 5;
  EXPECT_TRUE(has_violation(d, "r_reduced"));
  d = FieldDescriptor::mixed(2, 1, 2);
  d.eisenstein = std::vector<EisensteinCoefficient>{std::int64_t{4}, std::int64_t{0}};
  EXPECT_TRUE(has_violation(d, "eisenstein_a0"));
  d.eisenstein = std::vector<EisensteinCoefficient>{std::int64_t{2}, std::int64_t{1}};
  EXPECT_TRUE(has_violation(d, "eisenstein_ai"));
  d.eisenstein = std::vector<EisensteinCoefficient>{std::int64_t{2}};
  EXPECT_TRUE(has_violation(d, "eisenstein_degree"));
  d = FieldDescriptor::equal_characteristic(2, 1);
  d.eisenstein = std::vector<EisensteinCoefficient>{std::int64_t{2}};
  EXPECT_TRUE(has_violation(d, "eisenstein_finite_e"));
}

TEST(FieldDescriptor, ParseAndNormalForm) {
  const auto a = parse_descriptor(R"({"p": 2, "e": 2})");
  EXPECT_EQ(a, FieldDescriptor::mixed(2, 1, 2));
  const auto b = parse_descriptor(R"({"e": "INF", "p": 3, "f": 2})");
  EXPECT_EQ(b, FieldDescriptor::equal_characteristic(3, 2));
  EXPECT_EQ(normal_form(a), normal_form(parse_descriptor(normal_form(a))));
  EXPECT_EQ(normal_form(b), R"({"delta":1,"e":"inf","f":2,"p":3,"r":0})");
  const auto c = parse_descriptor(R"({"p": 2, "e": 2, "eisenstein": [-2, "01"]})");
  ASSERT_TRUE(c.eisenstein.has_value());
  EXPECT_EQ(parse_descriptor(normal_form(c)), c);
}

TEST(FieldDescriptor, ParseErrors) {
  EXPECT_THROW(parse_descriptor("{"), InvalidInput);
  EXPECT_THROW(parse_descriptor("[]"), InvalidInput);
  EXPECT_THROW(parse_descriptor(R"({"p": 2})"), InvalidInput);
  EXPECT_THROW(parse_descriptor(R"({"p": 2, "e": 1, "bogus": 1})"), InvalidInput);
  EXPECT_THROW(parse_descriptor(R"({"p": 2, "e": "many"})"), InvalidInput);
  EXPECT_THROW(parse_descriptor(R"({"p": 6, "e": 1})"), InvalidInput);
}

TEST(FieldDescriptor, ResidueFieldSizeAndLimit) {
  EXPECT_EQ(FieldDescriptor::mixed(3, 2, 1).residue_field_size(), 9u);
  EXPECT_EQ(FieldDescriptor::mixed(2, 1, 1, 2, 1).residue_field_size(), 4u);
  const auto lim = positive_char_limit(FieldDescriptor::mixed(2, 1, 5));
  EXPECT_EQ(lim, FieldDescriptor::equal_characteristic(2, 1));
  EXPECT_THROW(positive_char_limit(lim), InvalidInput);
}

TEST(DigitCodec, RoundTrip) {
  EXPECT_EQ(decode_digits(encode_digits({1, 0, 3}, 4), 4), (std::vector<int>{1, 0, 3}));
  const std::vector<int> big{40, 0, 7};
  EXPECT_EQ(decode_digits(encode_digits(big, 49), 49), big);
  EXPECT_THROW(decode_digits("9", 4), InvalidInput);
}

TEST(Closeness, ReferenceMatrix) {
  const auto q2 = FieldDescriptor::mixed(2, 1, 1);
  const auto q2s = FieldDescriptor::mixed(2, 1, 2);
  const auto f2 = FieldDescriptor::equal_characteristic(2, 1);
  EXPECT_EQ(closeness(q2, q2s, 2), 1);
  EXPECT_EQ(closeness(q2, f2, 2), 1);
  EXPECT_EQ(closeness(q2s, f2, 2), 2);
  EXPECT_EQ(closeness(q2, q2, 5), 5);
  EXPECT_EQ(closeness(q2s, f2, 3), 2);
}

TEST(Closeness, ResidueFieldsDiffer) {
  EXPECT_EQ(closeness(FieldDescriptor::mixed(2, 1, 1), FieldDescriptor::mixed(3, 1, 1), 3), 0);
  EXPECT_EQ(closeness(FieldDescriptor::mixed(2, 2, 1), FieldDescriptor::mixed(2, 1, 1), 3), 0);
}

TEST(Closeness, LadderTowardEqualCharacteristic) {
  const auto f2 = FieldDescriptor::equal_characteristic(2, 1);
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(closeness(FieldDescriptor::mixed(2, 1, r), f2, r + 1), r) << "R=" << r;
}

TEST(Closeness, BudgetAndValidation) {
  Budget tiny;
  tiny.max_ring_size = 8;
  EXPECT_THROW(closeness(FieldDescriptor::mixed(2, 1, 4), FieldDescriptor::equal_characteristic(2, 1), 6, tiny),
               BudgetExceeded);
  EXPECT_THROW(closeness(FieldDescriptor::mixed(4, 1, 1), FieldDescriptor::mixed(2, 1, 1), 2), InvalidInput);
}
