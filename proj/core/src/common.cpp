// Copyright 2026 The qshutter developers
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

#include "qshutter/common.hpp"

namespace qshutter {

std::string join_labels(const std::string& a, const std::string& b) {
  return a + kLabelSep + b;
}

std::vector<std::string> split_label(const std::string& joint) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = joint.find(kLabelSep, start);
    if (pos == std::string::npos) {
      parts.push_back(joint.substr(start));
      return parts;
    }
    parts.push_back(joint.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> product_labels(const std::vector<std::string>& outer,
                                        const std::vector<std::string>& inner) {
  std::vector<std::string> labels;
  labels.reserve(outer.size() * inner.size());
  for (const auto& o : outer) {
    for (const auto& i : inner) {
      labels.push_back(join_labels(o, i));
    }
  }
  return labels;
}

}  // namespace qshutter
