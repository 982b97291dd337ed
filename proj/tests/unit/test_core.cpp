#include "trusty/artifact_code.hpp"
#include "trusty/base64.hpp"
#include "trusty/error.hpp"
#include "trusty/ni_uri.hpp"
#include "trusty/sha256.hpp"
#include "trusty/trusty_uri.hpp"

#include "corpus.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace trusty;

namespace {

// Values frozen from tests/oracles/known_values.py (hashlib + urlsafe_b64encode).
constexpr std::string_view kEmptyHash = "47DEQpj8HBSa-_TImW-5JCeuQeRkm5NMpJWZG3hSuFU";
constexpr std::string_view kPaperCode = "RA5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70";

Digest random_digest(testing::Rng& rng) {
    Digest d;
    for (auto& b : d) b = static_cast<std::uint8_t>(rng());
    return d;
}

ArtifactCode random_code(testing::Rng& rng) {
    auto mods = registered_modules();
    return ArtifactCode::from_digest(mods[rng() % mods.size()], random_digest(rng));
}

std::string random_base(testing::Rng& rng) {
    static constexpr std::string_view chars = "abcXYZ019-_./#?=~";
    std::string out = (rng() % 2) ? "http://example.org/" : "https://data.example.com:8080/x/";
    auto n = rng() % 20;
    for (std::size_t i = 0; i < n; ++i) out.push_back(chars[rng() % chars.size()]);
    return out;
}

}  // namespace

TEST_CASE("encode_hash known values") {
    Digest zeros{};
    CHECK(encode_hash(zeros) == std::string(43, 'A'));

    Digest ones;
    ones.fill(0xFF);
    CHECK(encode_hash(ones) == std::string(42, '_') + "8");

    CHECK(encode_hash(sha256("")) == kEmptyHash);
    CHECK(encode_hash(sha256("abc")) == "ungWv48Bz-pBQUDeXa4iI7ADYaOWF3qctBD_YfIAFa0");
}

TEST_CASE("encode_hash rejects wrong digest length") {
    std::array<std::uint8_t, 31> short_digest{};
    CHECK_THROWS_AS(encode_hash(short_digest), std::invalid_argument);
    std::array<std::uint8_t, 33> long_digest{};
    CHECK_THROWS_AS(encode_hash(long_digest), std::invalid_argument);
}

TEST_CASE("base64 codec is bijective on digests") {
    testing::Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        auto d = random_digest(rng);
        auto text = encode_hash(d);
        REQUIRE(text.size() == 43);
        REQUIRE(is_valid_hash_chars(text));
        REQUIRE(decode_hash(text) == d);
    }
}

TEST_CASE("decode_hash rejects nonzero padding and foreign characters") {
    std::string s(43, 'A');
    s.back() = 'B';  // value 1: low bits set
    CHECK_THROWS_AS(decode_hash(s), MalformedCodeError);
    s.back() = 'E';  // value 4: ok
    CHECK_NOTHROW(decode_hash(s));
    s[5] = '+';
    CHECK_THROWS_AS(decode_hash(s), MalformedCodeError);
}

TEST_CASE("parse_artifact_code") {
    auto code = parse_artifact_code(kPaperCode);
    CHECK(code.module() == kModuleRA);
    CHECK(code.hash_chars().size() == 43);
    CHECK(code.str() == kPaperCode);

    CHECK_THROWS_AS(parse_artifact_code(std::string("RA") + std::string(42, 'A')), MalformedCodeError);
    CHECK_THROWS_AS(parse_artifact_code(std::string("ZZ") + std::string(43, 'A')), UnsupportedModuleError);
    CHECK_THROWS_AS(parse_artifact_code(std::string("RA") + std::string(42, 'A') + "+"), MalformedCodeError);

    auto unknown = ArtifactCode::parse(std::string("ZZ") + std::string(43, 'A'), ModulePolicy::allow_unknown);
    CHECK_FALSE(unknown.module().supported());
}

TEST_CASE("accepted codes re-render to themselves") {
    testing::Rng rng(2);
    static constexpr std::string_view alphabet = kBase64Alphabet;
    int accepted = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string s;
        for (int k = 0; k < 45; ++k) s.push_back(alphabet[rng() % 64]);
        if (i % 2 == 0) {
            s[0] = (rng() % 2) ? 'F' : 'R';
            s[1] = 'A';
        }
        try {
            auto code = ArtifactCode::parse(s, ModulePolicy::allow_unknown);
            REQUIRE(code.str() == s);
            ++accepted;
        } catch (const MalformedCodeError&) {
            REQUIRE_FALSE(ArtifactCode::is_well_formed(s));
        }
    }
    CHECK(accepted > 2000);
}

TEST_CASE("extract_trusty_uri") {
    auto plain = extract_trusty_uri(std::string("http://example.org/r1.") + std::string(kPaperCode));
    CHECK(plain.base == "http://example.org/r1.");
    CHECK(plain.code.str() == kPaperCode);
    CHECK_FALSE(plain.extension.has_value());

    auto with_ext = extract_trusty_uri(std::string("http://example.org/r1.") + std::string(kPaperCode) + ".nq");
    CHECK(with_ext.code.str() == kPaperCode);
    CHECK(with_ext.extension == "nq");
    CHECK(with_ext.str_with_extension() == std::string("http://example.org/r1.") + std::string(kPaperCode) + ".nq");

    auto two = extract_trusty_uri(std::string("r1.") + std::string(kPaperCode) + ".nq.gz");
    CHECK(two.extension == "nq.gz");
    CHECK(two.base == "r1.");

    CHECK_THROWS_AS(extract_trusty_uri(std::string("r1.") + std::string(kPaperCode) + ".a.b.c"), NotTrustyUriError);
    CHECK_THROWS_AS(extract_trusty_uri(std::string("r1.") + std::string(kPaperCode) + ".waytoolongext"),
                    NotTrustyUriError);
    CHECK_THROWS_AS(extract_trusty_uri("http://example.org/plain-resource"), NotTrustyUriError);
    CHECK_THROWS_AS(extract_trusty_uri(std::string("http://example.org/r1") + std::string(kPaperCode)),
                    DelimiterError);

    // Whole string is a code: no delimiter needed.
    CHECK(extract_trusty_uri(kPaperCode).base.empty());
}

TEST_CASE("make_trusty_uri delimiter rule") {
    auto code = parse_artifact_code(kPaperCode);
    CHECK(make_trusty_uri("http://example.org/r2", code).str() ==
          std::string("http://example.org/r2.") + std::string(kPaperCode));
    CHECK(make_trusty_uri("http://example.org/r2#", code).str() ==
          std::string("http://example.org/r2#") + std::string(kPaperCode));
    CHECK_THROWS_AS(make_trusty_uri(std::string("http://example.org/r2.") + std::string(kPaperCode), code), Error);
}

TEST_CASE("make/extract round trip") {
    testing::Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        auto base = random_base(rng);
        auto code = random_code(rng);
        auto made = make_trusty_uri(base, code);
        auto rendered = made.str();
        auto back = extract_trusty_uri(rendered);
        REQUIRE(back.code == code);
        REQUIRE(back.base + back.code.str() == rendered);
        REQUIRE_FALSE(back.extension.has_value());
    }
}

TEST_CASE("ni URIs") {
    auto t = extract_trusty_uri(std::string("http://example.org/r1.") + std::string(kPaperCode));
    CHECK(to_ni_uri(t).str() == "ni:///sha-256;5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70");
    CHECK(to_ni_uri(t, "example.org").str() == "ni://example.org/sha-256;5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70");
    CHECK(to_ni_uri(t, std::nullopt, true).str() ==
          "ni:///sha-256;5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70?module=RA");

    auto with_module = from_ni_uri(NiUri::parse("ni:///sha-256;5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70?module=RA"));
    CHECK(with_module.hash_chars == "5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70");
    REQUIRE(with_module.candidate_modules.size() == 1);
    CHECK(with_module.candidate_modules[0] == kModuleRA);

    auto without = from_ni_uri(NiUri::parse("ni:///sha-256;5AbXdpz5DcaYXCh9l3eI9ruBosiL5XDU3rxBbBaUO70"));
    REQUIRE(without.candidate_modules.size() == 2);
    CHECK(without.candidate_modules[0] == kModuleFA);
    CHECK(without.candidate_modules[1] == kModuleRA);

    CHECK_THROWS_AS(from_ni_uri(NiUri::parse("ni:///md5;1B2M2Y8AsgTpgAmY7PhCfg")), UnsupportedAlgorithmError);
    CHECK_THROWS(NiUri::parse("http://example.org/"));
}

TEST_CASE("ni URI round trip preserves hash and module") {
    testing::Rng rng(4);
    for (int i = 0; i < 10000; ++i) {
        auto t = make_trusty_uri(random_base(rng), random_code(rng));
        std::optional<std::string> authority;
        if (rng() % 2) authority = "host" + std::to_string(rng() % 100) + ".example";
        auto ni = to_ni_uri(t, authority, true);
        auto parsed = NiUri::parse(ni.str());
        REQUIRE(parsed == ni);
        auto res = from_ni_uri(parsed);
        REQUIRE(res.hash_chars == t.code.hash_chars());
        REQUIRE(res.candidate_modules == std::vector<ModuleId>{t.code.module()});
    }
}

TEST_CASE("contains_artifact_code") {
    CHECK(contains_artifact_code(std::string("data.FA") + std::string(kEmptyHash) + ".bin"));
    CHECK_FALSE(contains_artifact_code("data.bin"));
    CHECK_FALSE(contains_artifact_code(std::string("x") + std::string("FA") + std::string(kEmptyHash)));
}
