#pragma once
// Outcome of a randomized verification run: one record per checked
// property, each with the worst violation seen and the tolerance applied.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace krein {

enum class Expect { pass, fail };

// A measure is a continuous violation; a count is an integer deficit (a rank
// gap, a dimension mismatch, a false fact) compared against 1/2.
enum class Kind { measure, count };

struct CheckRecord {
    std::string name;
    std::string anchor; // which statement of the theory the record exercises
    double max_violation = 0.0;
    double tolerance = 0.0;
    Expect expect = Expect::pass;
    std::string note;
    Kind kind = Kind::measure;

    // A violation above tolerance; NaN counts as a violation.
    bool violated() const { return !(max_violation <= tolerance); }
    bool passed() const { return expect == Expect::pass ? !violated() : violated(); }
};

class Report {
public:
    Report() = default;
    explicit Report(std::string group) : group_(std::move(group)) {}

    const std::string& group() const { return group_; }
    const std::vector<CheckRecord>& records() const { return records_; }
    std::vector<CheckRecord>& records() { return records_; }

    CheckRecord& add(std::string name, std::string anchor, double violation, double tol,
                     std::string note = {})
    {
        records_.push_back({std::move(name), std::move(anchor), violation, tol, Expect::pass,
                            std::move(note)});
        return records_.back();
    }

    CheckRecord& add_negative(std::string name, std::string anchor, double violation, double tol,
                              std::string note = {})
    {
        records_.push_back({std::move(name), std::move(anchor), violation, tol, Expect::fail,
                            std::move(note)});
        return records_.back();
    }

    CheckRecord& add_count(std::string name, std::string anchor, double deficit, std::string note = {})
    {
        CheckRecord& r = add(std::move(name), std::move(anchor), deficit, 0.5, std::move(note));
        r.kind = Kind::count;
        return r;
    }

    CheckRecord& add_flag(std::string name, std::string anchor, bool holds, std::string note = {})
    {
        return add_count(std::move(name), std::move(anchor), holds ? 0.0 : 1.0, std::move(note));
    }

    void append(const Report& other, const std::string& prefix = {})
    {
        for (CheckRecord r : other.records_) {
            if (!prefix.empty())
                r.name = prefix + r.name;
            records_.push_back(std::move(r));
        }
    }

    // Fold in another run of the same checks, keeping the worst violation of
    // each record; unseen records are appended.
    void absorb(const Report& other, const std::string& prefix = {})
    {
        for (const CheckRecord& r : other.records_) {
            const std::string name = prefix + r.name;
            CheckRecord* mine = find_mutable(name);
            if (!mine) {
                records_.push_back(r);
                records_.back().name = name;
                continue;
            }
            if (std::isnan(r.max_violation) || r.max_violation > mine->max_violation) {
                mine->max_violation = r.max_violation;
                if (!r.note.empty())
                    mine->note = r.note;
            }
        }
    }

    bool passed() const
    {
        return std::all_of(records_.begin(), records_.end(),
                           [](const CheckRecord& r) { return r.passed(); });
    }

    const CheckRecord* find(const std::string& name) const
    {
        for (const auto& r : records_)
            if (r.name == name)
                return &r;
        return nullptr;
    }

    std::vector<std::string> violated_names() const
    {
        std::vector<std::string> out;
        for (const auto& r : records_)
            if (r.violated())
                out.push_back(r.name);
        return out;
    }

private:
    CheckRecord* find_mutable(const std::string& name)
    {
        for (auto& r : records_)
            if (r.name == name)
                return &r;
        return nullptr;
    }

    std::string group_;
    std::vector<CheckRecord> records_;
};

// Running maximum of a violation measure.
class Worst {
public:
    void update(double v)
    {
        if (std::isnan(v) || v > value_)
            value_ = v;
    }
    double value() const { return value_; }

private:
    double value_ = 0.0;
};

} // namespace krein
