#include "wise/eval.hpp"

#include <sstream>
#include <stdexcept>

namespace wise {

std::string EvalReport::csv_header() {
    return "model,test_set,precision,recall,f1,tp,fp,fn,tn";
}

std::string EvalReport::csv_row() const {
    std::ostringstream out;
    out << model << ',' << dataset << ',' << precision << ',' << recall << ','
        << f1 << ',' << tp << ',' << fp << ',' << fn << ',' << tn;
    return out.str();
}

EvalReport metrics_from_counts(size_t tp, size_t fp, size_t fn, size_t tn) {
    EvalReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.tn = tn;
    r.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                          : 0.0;
    r.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                       : 0.0;
    r.f1 = r.precision + r.recall > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

EvalReport evaluate(const ClassifierModel& m, const Dataset& test) {
    if (test.size() == 0) throw std::runtime_error("evaluate: empty test set");
    size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& s : test.sentences) {
        auto probs = forward(m, to_ids(s.tokens, m.config.vocab));
        int pred = probs[1] >= probs[0] ? 1 : 0;
        if (pred == 1 && s.label == 1) ++tp;
        else if (pred == 1 && s.label == 0) ++fp;
        else if (pred == 0 && s.label == 1) ++fn;
        else ++tn;
    }
    EvalReport r = metrics_from_counts(tp, fp, fn, tn);
    r.dataset = test.name;
    return r;
}

}  // namespace wise
