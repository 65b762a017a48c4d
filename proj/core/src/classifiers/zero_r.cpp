#include "cdprov/classifiers.hpp"

namespace cdprov::detail {

ZeroRModel train_zero_r(const Dataset& ds) { return ZeroRModel{ds.class_counts()}; }

double zero_r_recd(const ZeroRModel& m) { return recd_fraction(m.counts); }

}  // namespace cdprov::detail
