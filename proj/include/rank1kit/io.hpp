#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rank1kit/isometry.hpp"
#include "rank1kit/spectrum.hpp"

namespace rank1kit::io {

using nlohmann::json;

/// Malformed input. The message starts with the JSON path of the offending
/// field, e.g. "generators[1][0][1]: expected a complex number".
class InputError : public std::invalid_argument {
public:
    InputError(const std::string& path, const std::string& what);
};

json to_json(const Element& a);
json to_json(const SpaceConfig& c);
json to_json(const NilPoint& g);
json to_json(const BallPoint& x);
json to_json(const NormalIsometry& iso);
json to_json(cplx z);
json to_json(const Mat2& m);
json to_json(const SL2Rep& rep);
json to_json(const Word& w);
json to_json(const RankReport& r);
json to_json(const Estimate& e);

// `path` names the value being read and prefixes error messages.
Element element_from_json(const json& j, const std::string& path);
SpaceConfig config_from_json(const json& j, const std::string& path);
/// Missing "config" falls back to `fallback` when given.
NilPoint nilpoint_from_json(const json& j, const std::string& path, const SpaceConfig* fallback = nullptr);
BallPoint ballpoint_from_json(const json& j, const std::string& path, const SpaceConfig* fallback = nullptr);
NormalIsometry normal_from_json(const json& j, const std::string& path);
/// [re, im] or a plain number.
cplx complex_from_json(const json& j, const std::string& path);
SL2 sl2_from_json(const json& j, const std::string& path);
SL2Rep rep_from_json(const json& j, const std::string& path);
/// Signed index list [1, -2] or letter string "aB".
Word word_from_json(const json& j, const std::string& path);

/// Comma-separated letter words, e.g. "a,b,ab,aB".
std::vector<Word> parse_word_list(const std::string& s);

/// "word,length" CSV with a header line; words in letter notation.
std::map<Word, double> read_length_table(std::istream& in, int& arity);
std::string write_length_table(const std::vector<Word>& words, const std::vector<double>& lengths);

/// Shortest round-trip decimal form ("%.17g" trimmed), locale independent.
std::string format_double(double x);

json parse_json_text(const std::string& text, const std::string& source);

}  // namespace rank1kit::io
