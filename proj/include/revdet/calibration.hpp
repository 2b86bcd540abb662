#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "revdet/errors.hpp"

namespace revdet {

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    std::size_t count = 0;
    double smoothed = 0.0;
};

struct CalibrationResult {
    double tau = 0.0;
    std::string method;  // "valley", "fallback", or "degenerate"
    std::vector<HistogramBin> histogram;
    int peak1 = -1;   // bin index of the primary peak
    int peak2 = -1;   // bin index of the secondary peak (valley method only)
    int valley = -1;  // bin index tau was taken from (valley method only)
};

// Picks the cut-off threshold from a score histogram: bin the scores, smooth
// with a centered moving average, locate the two dominant peaks, and put tau
// at the emptiest bin between them. "Dominant" means the pair with the
// deepest separating valley, not simply the two tallest local maxima —
// sampling noise routinely puts the two tallest inside one cluster. Fallback
// when no separated pair exists: tau sits at the histogram boundary next to
// the main peak on its steeper side.
inline CalibrationResult calibrate_tau(const std::vector<double>& scores,
                                       std::size_t bins = 100,
                                       std::size_t window = 5) {
    if (scores.size() < 2)
        throw InsufficientData("calibration needs at least 2 scores, got " +
                               std::to_string(scores.size()));
    if (bins < 10)
        throw ConfigError("calibration bins must be >= 10");
    if (window < 1 || window % 2 == 0)
        throw ConfigError("smoothing window must be a positive odd count");

    CalibrationResult r;
    const double lo = *std::min_element(scores.begin(), scores.end());
    const double hi = *std::max_element(scores.begin(), scores.end());
    if (lo == hi) {
        r.tau = lo;
        r.method = "degenerate";
        r.histogram.push_back({lo, hi, scores.size(),
                               static_cast<double>(scores.size())});
        return r;
    }

    const std::size_t B = bins;
    const double width = (hi - lo) / static_cast<double>(B);
    std::vector<std::size_t> count(B, 0);
    for (double s : scores) {
        auto i = static_cast<std::size_t>((s - lo) / width);
        ++count[std::min(i, B - 1)];
    }

    const std::size_t h = (window - 1) / 2;
    std::vector<double> sm(B, 0.0);
    for (std::size_t i = 0; i < B; ++i) {
        std::size_t a = i >= h ? i - h : 0;
        std::size_t b = std::min(B - 1, i + h);
        double sum = 0.0;
        for (std::size_t k = a; k <= b; ++k)
            sum += static_cast<double>(count[k]);
        sm[i] = sum / static_cast<double>(b - a + 1);
    }

    r.histogram.resize(B);
    for (std::size_t i = 0; i < B; ++i)
        r.histogram[i] = {lo + width * static_cast<double>(i),
                          lo + width * static_cast<double>(i + 1), count[i],
                          sm[i]};
    r.histogram.back().right = hi;

    // local maxima as plateau runs [a,b] strictly above both neighbours
    struct Peak {
        std::size_t a, b;
        double height;
    };
    std::vector<Peak> peaks;
    for (std::size_t i = 0; i < B;) {
        std::size_t j = i;
        while (j + 1 < B && sm[j + 1] == sm[i]) ++j;
        bool up_left = i == 0 || sm[i - 1] < sm[i];
        bool up_right = j == B - 1 || sm[j + 1] < sm[i];
        if (up_left && up_right) peaks.push_back({i, j, sm[i]});
        i = j + 1;
    }

    auto fallback = [&](const Peak& p) {
        constexpr double ninf = -std::numeric_limits<double>::infinity();
        double drop_left = p.a > 0 ? p.height - sm[p.a - 1] : ninf;
        double drop_right = p.b < B - 1 ? p.height - sm[p.b + 1] : ninf;
        r.method = "fallback";
        r.peak1 = static_cast<int>(p.a);
        if (drop_left == ninf && drop_right == ninf)
            r.tau = hi;  // flat histogram
        else if (drop_left > drop_right)
            r.tau = r.histogram[p.a].left;
        else
            r.tau = r.histogram[p.b].right;
        return r;
    };

    // primary peak: greatest smoothed height, leftmost on ties
    std::size_t p1 = 0;
    for (std::size_t k = 1; k < peaks.size(); ++k)
        if (peaks[k].height > peaks[p1].height) p1 = k;
    if (peaks.size() < 2) return fallback(peaks[p1]);

    // secondary peak: the one whose separating valley from the primary is
    // deepest, i.e. maximize min(height1, height2) - min smoothed between
    std::size_t p2 = peaks.size();
    double best_sep = 0.0;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        if (k == p1) continue;
        std::size_t inner_lo = std::min(peaks[p1].b, peaks[k].b) + 1;
        std::size_t inner_hi = std::max(peaks[p1].a, peaks[k].a);  // exclusive
        if (inner_lo >= inner_hi) continue;
        double dip = sm[inner_lo];
        for (std::size_t i = inner_lo + 1; i < inner_hi; ++i)
            dip = std::min(dip, sm[i]);
        double sep = std::min(peaks[p1].height, peaks[k].height) - dip;
        if (p2 == peaks.size() || sep > best_sep ||
            (sep == best_sep && peaks[k].height > peaks[p2].height)) {
            p2 = k;
            best_sep = sep;
        }
    }
    if (p2 == peaks.size() || best_sep <= 0.0) return fallback(peaks[p1]);

    // valley: emptiest raw bin strictly between the peaks; ties resolved to
    // the median tied index so tau sits mid-gap
    const std::size_t inner_lo = std::min(peaks[p1].b, peaks[p2].b) + 1;
    const std::size_t inner_hi = std::max(peaks[p1].a, peaks[p2].a);
    std::size_t min_count = count[inner_lo];
    for (std::size_t i = inner_lo; i < inner_hi; ++i)
        min_count = std::min(min_count, count[i]);
    std::vector<std::size_t> ties;
    for (std::size_t i = inner_lo; i < inner_hi; ++i)
        if (count[i] == min_count) ties.push_back(i);
    const std::size_t v = ties[(ties.size() - 1) / 2];

    r.tau = 0.5 * (r.histogram[v].left + r.histogram[v].right);
    r.method = "valley";
    r.peak1 = static_cast<int>(peaks[p1].a);
    r.peak2 = static_cast<int>(peaks[p2].a);
    r.valley = static_cast<int>(v);
    return r;
}

}  // namespace revdet
