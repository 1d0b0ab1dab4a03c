#ifndef LEXSHIFT_JSON_HPP_
#define LEXSHIFT_JSON_HPP_

// System package when present, vendored single header otherwise.
#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

#endif  // LEXSHIFT_JSON_HPP_
