#include "lesionseg/metrics.hpp"

#include "lesionseg/errors.hpp"

namespace lesionseg {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.width != gt.width || pred.height != gt.height) {
        throw ParamError("confusion: mask dimensions differ");
    }
    ConfusionCounts c;
    for (size_t i = 0; i < pred.mask.size(); ++i) {
        const bool p = pred.mask[i] != 0;
        const bool g = gt.mask[i] != 0;
        if (p && g) {
            ++c.tp;
        } else if (p && !g) {
            ++c.fp;
        } else if (!p && g) {
            ++c.fn;
        } else {
            ++c.tn;
        }
    }
    return c;
}

MetricsRecord metrics(const ConfusionCounts& c) {
    const uint64_t total = c.total();
    if (total == 0) {
        throw ParamError("metrics: no pixels counted");
    }
    MetricsRecord r;
    if (c.tp + c.fn > 0) {
        r.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    }
    if (c.tn + c.fp > 0) {
        r.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    }
    if (2 * c.tp + c.fp + c.fn > 0) {
        r.dsc = 2.0 * static_cast<double>(c.tp) /
                static_cast<double>(2 * c.tp + c.fp + c.fn);
    }
    r.accuracy = 100.0 * static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
    return r;
}

}  // namespace lesionseg
