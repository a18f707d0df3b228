// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OMI_RATIONAL_H_
#define OMI_RATIONAL_H_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace omi {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a decimal literal such as "0.36" or "1/3".
Rational parse_rational(std::string_view text);

// "num/den" in lowest terms ("n" when den == 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace omi

#endif  // OMI_RATIONAL_H_
