// Copyright 2026 The Privometer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privometer/encode.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "privometer/errors.hpp"

namespace privometer {

namespace {

std::vector<std::string> canonical_features(
    const std::vector<std::string>& features,
    const std::optional<std::string>& target) {
  if (features.empty()) {
    throw ValidationError("encode: the known-attribute set must not be empty");
  }
  std::set<std::string> unique(features.begin(), features.end());
  if (target.has_value() && unique.count(*target)) {
    throw ValidationError("encode: secret column '" + *target +
                          "' must not be listed among the known columns");
  }
  return {unique.begin(), unique.end()};  // sorted, deduplicated
}

}  // namespace

Encoder Encoder::fit(const Dataset& fit_on,
                     const std::vector<std::string>& features,
                     const std::optional<std::string>& target) {
  Encoder enc;
  enc.target_ = target;

  const auto ordered = canonical_features(features, target);
  const std::size_t n = fit_on.row_count();

  for (const auto& name : ordered) {
    const std::size_t ci = fit_on.column_index(name);
    const Column& col = fit_on.column(ci);
    if (col.spec.kind == ColumnKind::categorical) {
      CatFeature cat;
      cat.column = name;
      std::set<std::string> seen;
      for (std::size_t r = 0; r < n; ++r) {
        seen.insert(col.labels[static_cast<std::size_t>(col.codes[r])]);
      }
      cat.alphabet.assign(seen.begin(), seen.end());
      for (const auto& label : cat.alphabet) {
        enc.names_.push_back(name + "=" + label);
      }
      enc.feature_count_ += cat.alphabet.size();
      enc.order_.push_back({ColumnKind::categorical, enc.cats_.size()});
      enc.cats_.push_back(std::move(cat));
    } else {
      ContFeature cont;
      cont.column = name;
      double mean = 0.0;
      for (std::size_t r = 0; r < n; ++r) mean += col.values[r];
      mean /= (n > 0 ? static_cast<double>(n) : 1.0);
      double var = 0.0;
      bool constant = true;
      for (std::size_t r = 0; r < n; ++r) {
        const double d = col.values[r] - mean;
        var += d * d;
        if (col.values[r] != col.values[0]) constant = false;
      }
      var /= (n > 0 ? static_cast<double>(n) : 1.0);
      cont.mean = mean;
      cont.sd = constant ? 0.0 : std::sqrt(var);
      enc.names_.push_back(name);
      enc.feature_count_ += 1;
      enc.order_.push_back({ColumnKind::continuous, enc.conts_.size()});
      enc.conts_.push_back(std::move(cont));
    }
  }

  if (target.has_value()) {
    const std::size_t ti = fit_on.column_index(*target);
    const Column& tcol = fit_on.column(ti);
    enc.target_kind_ = tcol.spec.kind;
    if (tcol.spec.kind == ColumnKind::categorical) {
      std::set<std::string> seen;
      for (std::size_t r = 0; r < n; ++r) {
        seen.insert(tcol.labels[static_cast<std::size_t>(tcol.codes[r])]);
      }
      enc.class_labels_.assign(seen.begin(), seen.end());
    }
  }
  return enc;
}

FeatureMatrix Encoder::transform(const Dataset& d) const {
  const std::size_t n = d.row_count();
  FeatureMatrix out;
  out.feature_names = names_;
  out.row_ids = d.row_ids();
  out.design = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(feature_count_));

  std::size_t offset = 0;
  for (const auto& f : order_) {
    if (f.kind == ColumnKind::categorical) {
      const CatFeature& cat = cats_[f.index];
      const std::size_t ci = d.column_index(cat.column);
      const Column& col = d.column(ci);
      if (col.spec.kind != ColumnKind::categorical) {
        throw ValidationError("encode: column '" + cat.column +
                              "' is continuous here but was categorical at fit");
      }
      for (std::size_t r = 0; r < n; ++r) {
        const std::string& label =
            col.labels[static_cast<std::size_t>(col.codes[r])];
        const auto it =
            std::lower_bound(cat.alphabet.begin(), cat.alphabet.end(), label);
        if (it != cat.alphabet.end() && *it == label) {
          const auto k = static_cast<std::size_t>(it - cat.alphabet.begin());
          out.design(static_cast<Eigen::Index>(r),
                     static_cast<Eigen::Index>(offset + k)) = 1.0;
        }
        // Unseen label: the whole block stays zero.
      }
      offset += cat.alphabet.size();
    } else {
      const ContFeature& cont = conts_[f.index];
      const std::size_t ci = d.column_index(cont.column);
      const Column& col = d.column(ci);
      if (col.spec.kind != ColumnKind::continuous) {
        throw ValidationError("encode: column '" + cont.column +
                              "' is categorical here but was continuous at fit");
      }
      for (std::size_t r = 0; r < n; ++r) {
        const double v = col.values[r];
        out.design(static_cast<Eigen::Index>(r),
                   static_cast<Eigen::Index>(offset)) =
            cont.sd > 0.0 ? (v - cont.mean) / cont.sd : 0.0;
      }
      offset += 1;
    }
  }
  return out;
}

ColumnKind Encoder::target_kind() const {
  if (!target_.has_value()) {
    throw ValidationError("encode: this encoder has no target column");
  }
  return target_kind_;
}

std::vector<std::int32_t> Encoder::target_class_indices(const Dataset& d) const {
  if (!target_ || target_kind_ != ColumnKind::categorical) {
    throw ValidationError("encode: no categorical target configured");
  }
  const std::size_t ti = d.column_index(*target_);
  std::vector<std::int32_t> out;
  out.reserve(d.row_count());
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    const std::string& label = d.categorical_label(r, ti);
    const auto it =
        std::lower_bound(class_labels_.begin(), class_labels_.end(), label);
    if (it != class_labels_.end() && *it == label) {
      out.push_back(static_cast<std::int32_t>(it - class_labels_.begin()));
    } else {
      out.push_back(-1);
    }
  }
  return out;
}

std::vector<std::string> Encoder::target_labels(const Dataset& d) const {
  if (!target_ || target_kind_ != ColumnKind::categorical) {
    throw ValidationError("encode: no categorical target configured");
  }
  const std::size_t ti = d.column_index(*target_);
  std::vector<std::string> out;
  out.reserve(d.row_count());
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    out.push_back(d.categorical_label(r, ti));
  }
  return out;
}

Eigen::VectorXd Encoder::target_values(const Dataset& d) const {
  if (!target_ || target_kind_ != ColumnKind::continuous) {
    throw ValidationError("encode: no continuous target configured");
  }
  const std::size_t ti = d.column_index(*target_);
  Eigen::VectorXd out(static_cast<Eigen::Index>(d.row_count()));
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    out(static_cast<Eigen::Index>(r)) = d.continuous_value(r, ti);
  }
  return out;
}

EncodedData encode(const Dataset& fit_on, const Dataset& transform,
                   const std::vector<std::string>& known,
                   const std::string& secret) {
  const Encoder enc = Encoder::fit(fit_on, known, secret);
  EncodedData out;
  out.x = enc.transform(transform);
  out.target_kind = enc.target_kind();
  if (out.target_kind == ColumnKind::categorical) {
    out.class_labels = enc.class_labels();
    out.y_class = enc.target_class_indices(transform);
    out.y_label = enc.target_labels(transform);
  } else {
    out.y_value = enc.target_values(transform);
  }
  return out;
}

}  // namespace privometer
