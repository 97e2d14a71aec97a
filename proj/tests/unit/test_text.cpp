#include <doctest.h>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

using namespace wikicorpus;

TEST_SUITE("text") {

TEST_CASE("utf-8 validation") {
  CHECK(text::is_valid_utf8("plain"));
  CHECK(text::is_valid_utf8("Zürich – ok"));
  CHECK_FALSE(text::is_valid_utf8("\xff\xfe"));
  CHECK_FALSE(text::is_valid_utf8("\xc3"));          // truncated
  CHECK_FALSE(text::is_valid_utf8("\xc0\xaf"));      // overlong
  CHECK_FALSE(text::is_valid_utf8("\xed\xa0\x80"));  // surrogate
}

TEST_CASE("nfc composes and rejects bad input") {
  CHECK(text::nfc("e\xcc\x81") == "\xc3\xa9");
  CHECK(text::nfc("") == "");
  try {
    (void)text::nfc("\xff");
    FAIL("expected InvalidEncoding");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidEncoding);
  }
}

TEST_CASE("lowercasing") {
  CHECK(text::to_lower("Rail Transport") == "rail transport");
  CHECK(text::to_lower("ÉCOLE") == "école");
  CHECK(text::to_lower("İ").size() > 0);
}

TEST_CASE("character classes") {
  CHECK(text::has_letter("a1"));
  CHECK_FALSE(text::has_letter("123"));
  CHECK(text::is_all_digits("2024"));
  CHECK_FALSE(text::is_all_digits(""));
  CHECK_FALSE(text::is_all_digits("12a"));
  CHECK(text::starts_with_upper("Rover"));
  CHECK_FALSE(text::starts_with_upper("rover"));
}

TEST_CASE("phrase normalization") {
  CHECK(text::trim("  a b \n") == "a b");
  CHECK(text::normalize_phrase("  Lunar \t  Rover ") == "lunar rover");
}

TEST_CASE("sha256") {
  CHECK(text::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(text::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // TEST_SUITE
