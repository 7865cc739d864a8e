#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace relkrr {

enum class TaskKind { TI, TP, TIExc };

std::string to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

// One relational task instance. Items are indexed 1..n with underlying
// order I_1 > I_2 > ... > I_n; TIExc adds the exception pair I_p > I_q.
struct TaskSpec {
    int n = 0;
    TaskKind kind = TaskKind::TI;
    int p = 0;  // exception indices, TIExc only
    int q = 0;

    static TaskSpec ti(int n) { return validated({n, TaskKind::TI, 0, 0}); }
    static TaskSpec tp(int n) { return validated({n, TaskKind::TP, 0, 0}); }
    static TaskSpec ti_exc(int n, int p, int q) {
        return validated({n, TaskKind::TIExc, p, q});
    }

    void validate() const;

    // Intransitive loop membership: q <= j <= p.
    bool in_loop(int j) const {
        return kind == TaskKind::TIExc && j >= q && j <= p;
    }
    // 1 for the first ordered section {1..q-1}, 2 for {p+1..n}, 0 otherwise.
    int section_of(int j) const {
        if (kind != TaskKind::TIExc) return 0;
        if (j < q) return 1;
        if (j > p) return 2;
        return 0;
    }

    nlohmann::json to_json() const;
    static TaskSpec from_json(const nlohmann::json& j);

    bool operator==(const TaskSpec&) const = default;

  private:
    static TaskSpec validated(TaskSpec s) {
        s.validate();
        return s;
    }
};

struct ItemPair {
    int j = 0;
    int k = 0;
    bool operator==(const ItemPair&) const = default;
};

struct LabeledPair {
    ItemPair pair;
    int label = 0;  // +1 or -1
};

struct Dataset {
    TaskSpec spec;
    std::vector<LabeledPair> examples;

    // Index of a pair in `examples`, or -1 when the pair was not trained on.
    int find(ItemPair pair) const;
    bool contains(ItemPair pair) const { return find(pair) >= 0; }
    int size() const { return static_cast<int>(examples.size()); }
};

enum class SplitName { MemTransitive, MemIntransitive, WithinSection, CrossSection };

std::string to_string(SplitName name);

struct ScoredPair {
    ItemPair pair;
    int expected = 0;  // +1 or -1
};

struct EvalSplit {
    SplitName name;
    std::vector<ScoredPair> pairs;
};

void validate_pair(const TaskSpec& spec, ItemPair pair);

// Adjacent pairs in both directions, plus the exception pair (TIExc) or the
// wrap pair (n,1) (TP), also in both directions.
Dataset build_training_set(const TaskSpec& spec);

// The four evaluation splits for TIExc. Pairs touching the loop that were
// not trained on carry no expected label and are omitted.
std::vector<EvalSplit> build_eval_splits(const TaskSpec& spec);

// Expected label for a scored pair, or nullopt for unscored pairs.
std::optional<int> expected_label(const TaskSpec& spec, ItemPair pair);

}  // namespace relkrr
