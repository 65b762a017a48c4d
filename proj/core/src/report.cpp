#include <algorithm>
#include <cstdio>

#include "cdprov/evaluation.hpp"

namespace cdprov {
namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::vector<std::string> values_of(const MetricsReport& r, bool perClass) {
  std::vector<std::string> v{fixed2(r.accuracy), fixed2(r.precision), fixed2(r.recall), fixed2(r.f1), fixed2(r.auc)};
  if (perClass) {
    for (double x : {r.fwcd.precision, r.fwcd.recall, r.fwcd.f1, r.macro.precision, r.macro.recall, r.macro.f1}) {
      v.push_back(fixed2(x));
    }
  }
  return v;
}

}  // namespace

RenderedReport render_report(std::vector<MetricsReport> reports, bool perClass) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return static_cast<int>(a.spec.kind) < static_cast<int>(b.spec.kind);
  });

  std::vector<std::string> headings{"Accuracy", "Precision", "Recall", "F Measure", "AUC"};
  std::vector<std::string> csv_columns{"accuracy", "precision", "recall", "f1", "auc"};
  if (perClass) {
    headings.insert(headings.end(), {"P(FwCD)", "R(FwCD)", "F(FwCD)", "P(macro)", "R(macro)", "F(macro)"});
    csv_columns.insert(csv_columns.end(), {"precision_fwcd", "recall_fwcd", "f1_fwcd", "precision_macro",
                                           "recall_macro", "f1_macro"});
  }

  RenderedReport out;
  if (!reports.empty()) {
    const auto& c = reports.front().config;
    out.text += "Classification performance (stratified " + std::to_string(c.folds) + "-fold CV x " +
                std::to_string(c.repeats) + " repeats, seed " + std::to_string(c.seed) + ")\n\n";
  }
  constexpr std::size_t kNameWidth = 16;
  out.text += pad_right("Classifier", kNameWidth);
  for (const auto& h : headings) out.text += "  " + pad_left(h, std::max<std::size_t>(h.size(), 6));
  out.text += '\n';

  out.csv = "classifier,name";
  for (const auto& c : csv_columns) out.csv += "," + c;
  out.csv += ",folds,repeats,seed\n";

  for (const auto& r : reports) {
    const std::string name = display_name(r.spec.kind, r.spec.hp.knnK);
    const auto values = values_of(r, perClass);
    out.text += pad_right(name, kNameWidth);
    for (std::size_t i = 0; i < values.size(); ++i) {
      out.text += "  " + pad_left(values[i], std::max<std::size_t>(headings[i].size(), 6));
    }
    out.text += '\n';

    out.csv += std::string(to_string(r.spec.kind)) + "," + name;
    for (const auto& v : values) out.csv += "," + v;
    out.csv += "," + std::to_string(r.config.folds) + "," + std::to_string(r.config.repeats) + "," +
               std::to_string(r.config.seed) + "\n";
  }
  return out;
}

std::string render_folds_csv(const std::vector<MetricsReport>& reports) {
  std::string out = "classifier,repeat,fold,tp,fp,tn,fn,seed\n";
  for (const auto& r : reports) {
    for (const auto& f : r.folds) {
      out += std::string(to_string(r.spec.kind)) + "," + std::to_string(f.repeat) + "," + std::to_string(f.fold) +
             "," + std::to_string(f.cm.tp) + "," + std::to_string(f.cm.fp) + "," + std::to_string(f.cm.tn) + "," +
             std::to_string(f.cm.fn) + "," + std::to_string(r.config.seed) + "\n";
    }
  }
  return out;
}

}  // namespace cdprov
