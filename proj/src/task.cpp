#include "relkrr/task.hpp"

#include <algorithm>

namespace relkrr {

std::string to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::TI: return "ti";
        case TaskKind::TP: return "tp";
        case TaskKind::TIExc: return "tiexc";
    }
    return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "ti") return TaskKind::TI;
    if (s == "tp") return TaskKind::TP;
    if (s == "tiexc") return TaskKind::TIExc;
    throw std::invalid_argument("unknown task kind: " + s);
}

void TaskSpec::validate() const {
    if (n < 3) throw std::invalid_argument("TaskSpec: n must be >= 3");
    if (kind == TaskKind::TIExc) {
        if (q < 1 || p > n || q >= p)
            throw std::invalid_argument("TaskSpec: need 1 <= q < p <= n");
        if (p - q < 2)
            throw std::invalid_argument("TaskSpec: need p - q >= 2");
    } else if (p != 0 || q != 0) {
        throw std::invalid_argument("TaskSpec: p,q only valid for tiexc");
    }
}

nlohmann::json TaskSpec::to_json() const {
    nlohmann::json j{{"n", n}, {"kind", to_string(kind)}};
    if (kind == TaskKind::TIExc) {
        j["p"] = p;
        j["q"] = q;
    }
    return j;
}

TaskSpec TaskSpec::from_json(const nlohmann::json& j) {
    TaskSpec s;
    s.n = j.at("n").get<int>();
    s.kind = task_kind_from_string(j.at("kind").get<std::string>());
    if (s.kind == TaskKind::TIExc) {
        s.p = j.at("p").get<int>();
        s.q = j.at("q").get<int>();
    }
    s.validate();
    return s;
}

std::string to_string(SplitName name) {
    switch (name) {
        case SplitName::MemTransitive: return "mem_transitive";
        case SplitName::MemIntransitive: return "mem_intransitive";
        case SplitName::WithinSection: return "within_section";
        case SplitName::CrossSection: return "cross_section";
    }
    return "?";
}

void validate_pair(const TaskSpec& spec, ItemPair pair) {
    if (pair.j < 1 || pair.j > spec.n || pair.k < 1 || pair.k > spec.n)
        throw std::invalid_argument("ItemPair: index out of range");
    if (pair.j == pair.k)
        throw std::invalid_argument("ItemPair: j != k required");
}

int Dataset::find(ItemPair pair) const {
    for (int i = 0; i < size(); ++i)
        if (examples[i].pair == pair) return i;
    return -1;
}

Dataset build_training_set(const TaskSpec& spec) {
    spec.validate();
    Dataset data{spec, {}};
    for (int j = 1; j < spec.n; ++j)
        data.examples.push_back({{j, j + 1}, +1});
    for (int j = 1; j < spec.n; ++j)
        data.examples.push_back({{j + 1, j}, -1});
    if (spec.kind == TaskKind::TIExc) {
        data.examples.push_back({{spec.p, spec.q}, +1});
        data.examples.push_back({{spec.q, spec.p}, -1});
    } else if (spec.kind == TaskKind::TP) {
        data.examples.push_back({{spec.n, 1}, +1});
        data.examples.push_back({{1, spec.n}, -1});
    }
    return data;
}

std::optional<int> expected_label(const TaskSpec& spec, ItemPair pair) {
    validate_pair(spec, pair);
    if (spec.kind == TaskKind::TI)
        return pair.j < pair.k ? +1 : -1;
    if (spec.kind == TaskKind::TP) {
        // No consistent ranking; only the trained relation is scored.
        Dataset train = build_training_set(spec);
        int idx = train.find(pair);
        if (idx < 0) return std::nullopt;
        return train.examples[idx].label;
    }
    // TIExc
    if (pair.j == spec.p && pair.k == spec.q) return +1;
    if (pair.j == spec.q && pair.k == spec.p) return -1;
    bool j_loop = spec.in_loop(pair.j);
    bool k_loop = spec.in_loop(pair.k);
    bool adjacent = std::abs(pair.j - pair.k) == 1;
    if ((j_loop || k_loop) && !adjacent) return std::nullopt;
    return pair.j < pair.k ? +1 : -1;
}

std::vector<EvalSplit> build_eval_splits(const TaskSpec& spec) {
    spec.validate();
    if (spec.kind != TaskKind::TIExc)
        throw std::invalid_argument("build_eval_splits: only tiexc has eval splits");

    Dataset train = build_training_set(spec);
    std::vector<EvalSplit> splits{{SplitName::MemTransitive, {}},
                                  {SplitName::MemIntransitive, {}},
                                  {SplitName::WithinSection, {}},
                                  {SplitName::CrossSection, {}}};
    auto& mem_trans = splits[0].pairs;
    auto& mem_intrans = splits[1].pairs;
    auto& within = splits[2].pairs;
    auto& cross = splits[3].pairs;

    for (int j = 1; j <= spec.n; ++j) {
        for (int k = 1; k <= spec.n; ++k) {
            if (j == k) continue;
            ItemPair pair{j, k};
            auto label = expected_label(spec, pair);
            if (!label) continue;
            if (train.contains(pair)) {
                if (spec.in_loop(j) && spec.in_loop(k))
                    mem_intrans.push_back({pair, *label});
                else
                    mem_trans.push_back({pair, *label});
            } else {
                int sj = spec.section_of(j), sk = spec.section_of(k);
                if (sj != 0 && sj == sk)
                    within.push_back({pair, *label});
                else if (sj != 0 && sk != 0)
                    cross.push_back({pair, *label});
                // Untrained pairs touching the loop were filtered above.
            }
        }
    }
    return splits;
}

}  // namespace relkrr
