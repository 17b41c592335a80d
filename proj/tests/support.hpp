#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "predreg/predreg.hpp"

namespace predreg::testing {

// Deterministic, irregular walk: x_k = sum_{i<=k} sin(0.37 i^2). Used where an
// external reference was computed from the same closed form.
inline Series sine_walk(int n) {
  Series x(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    acc += std::sin(0.37 * k * k);
    x[static_cast<std::size_t>(k - 1)] = acc;
  }
  return x;
}

// A valid quarterly table starting 1950Q1 built from smooth closed forms.
inline ObservationTable toy_table(int rows, bool with_cay = true) {
  ObservationTable t;
  t.frequency = Frequency::quarterly;
  Series cay;
  for (int i = 0; i < rows; ++i) {
    const int ordinal = 1950 * 4 + i;
    t.period_index.push_back(ordinal);
    t.period_labels.push_back(format_period(ordinal, Frequency::quarterly));
    const double price = 100.0 * std::exp(0.01 * i + 0.05 * std::sin(0.9 * i));
    t.price.push_back(price);
    t.dividends.push_back(price * (0.03 + 0.005 * std::cos(0.4 * i)));
    t.earnings.push_back(price * (0.06 + 0.01 * std::sin(0.3 * i + 1.0)));
    t.book_to_market.push_back(0.6 + 0.2 * std::sin(0.17 * i));
    cay.push_back(0.02 * std::sin(0.5 * i + 0.3));
  }
  if (with_cay) t.cay = cay;
  return t;
}

inline std::string to_csv(const ObservationTable& table) {
  std::ostringstream out;
  write_observations(out, table);
  return out.str();
}

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an Error");
}

template <class F>
std::string error_message_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  throw std::logic_error("expected an Error");
}

}  // namespace predreg::testing
