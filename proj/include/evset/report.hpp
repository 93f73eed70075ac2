#pragma once

#include <string>

namespace evset {

// Pass/fail record for one inequality instance. Sign convention: pass iff
// margin >= -tolerance, where margin is oriented so that larger is safer
// (lhs - rhs for >= checks, rhs - lhs for <= checks). A vacuous report is
// one whose right side makes the inequality trivially true (e.g. rhs <= 0
// for a probability lower bound); vacuous failures never gate anything.
struct BoundReport {
    std::string name;
    std::string inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool vacuous = false;
    std::string note;
};

inline BoundReport make_report(std::string name, std::string inputs, double lhs, double rhs,
                               double margin, double tolerance, bool vacuous = false,
                               std::string note = {}) {
    BoundReport r;
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = margin;
    r.tolerance = tolerance;
    r.pass = margin >= -tolerance;
    r.vacuous = vacuous;
    r.note = std::move(note);
    return r;
}

} // namespace evset
