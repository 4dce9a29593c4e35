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

#ifndef PRIVOMETER_ENCODE_HPP_
#define PRIVOMETER_ENCODE_HPP_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "privometer/dataset.hpp"

namespace privometer {

// Numeric design matrix plus bookkeeping. One-hot blocks contribute exactly
// one 1 per row per categorical feature (or all zeros when the row's label
// was never seen while fitting); continuous features are standardized.
struct FeatureMatrix {
  Eigen::MatrixXd design;                 // rows x features
  std::vector<std::string> feature_names; // "col=label" / "col"
  std::vector<std::uint32_t> row_ids;     // parallel to design rows
};

// Fitted feature/target encoding. All statistics (categorical alphabets,
// means, standard deviations) come from the fitting set only and are then
// applied unchanged to any transformed dataset — non-member rows never leak
// into the encoding. Encoding is a pure function of (fitting set, features,
// target): repeated fits and transforms are byte-identical.
class Encoder {
 public:
  // Fit on `features` (deduplicated and sorted into a canonical order) and
  // optionally a target column. The target must not appear among the
  // features; features must be non-empty.
  static Encoder fit(const Dataset& fit_on,
                     const std::vector<std::string>& features,
                     const std::optional<std::string>& target);

  // Encode a dataset's feature columns. Labels unseen at fit time produce an
  // all-zero one-hot block; constant continuous columns encode as 0.
  FeatureMatrix transform(const Dataset& d) const;

  std::size_t feature_count() const { return feature_count_; }
  const std::vector<std::string>& feature_names() const { return names_; }

  bool has_target() const { return target_.has_value(); }
  ColumnKind target_kind() const;
  // Sorted alphabet of the categorical target observed at fit time.
  const std::vector<std::string>& class_labels() const { return class_labels_; }

  // Target extraction from any dataset sharing the target column.
  // Categorical: class indices into class_labels() (-1 for unseen labels),
  // and raw labels. Continuous: raw values.
  std::vector<std::int32_t> target_class_indices(const Dataset& d) const;
  std::vector<std::string> target_labels(const Dataset& d) const;
  Eigen::VectorXd target_values(const Dataset& d) const;

 private:
  struct CatFeature {
    std::string column;
    std::vector<std::string> alphabet;  // sorted labels seen at fit time
  };
  struct ContFeature {
    std::string column;
    double mean = 0.0;
    double sd = 0.0;  // population sd over the fitting set; 0 => constant
  };
  struct Feature {
    ColumnKind kind;
    std::size_t index;  // into cats_ or conts_
  };

  std::vector<Feature> order_;
  std::vector<CatFeature> cats_;
  std::vector<ContFeature> conts_;
  std::vector<std::string> names_;
  std::size_t feature_count_ = 0;

  std::optional<std::string> target_;
  ColumnKind target_kind_ = ColumnKind::categorical;
  std::vector<std::string> class_labels_;
};

// One-call façade: fit the encoding on fit_on, then encode transform's
// features and extract transform's secret targets. known must not contain
// secret and must be non-empty.
struct EncodedData {
  FeatureMatrix x;
  ColumnKind target_kind;
  std::vector<std::string> class_labels;  // categorical secrets
  std::vector<std::int32_t> y_class;      // categorical: index or -1 if unseen
  std::vector<std::string> y_label;       // categorical: raw labels
  Eigen::VectorXd y_value;                // continuous secrets
};
EncodedData encode(const Dataset& fit_on, const Dataset& transform,
                   const std::vector<std::string>& known,
                   const std::string& secret);

}  // namespace privometer

#endif  // PRIVOMETER_ENCODE_HPP_
