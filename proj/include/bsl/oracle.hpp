#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsl/formula.hpp"

namespace bsl {

enum class LocSort { Nil, S, D, N };

const char* loc_sort_name(LocSort s);
LocSort loc_sort_of(Sort s);

// Field record; unused fields are -1. The set of used fields follows the
// location's sort: S has n, D has n and p, N has n and t.
struct Record {
    int n = -1, p = -1, t = -1;
    int get(Field f) const { return f == Field::n ? n : f == Field::p ? p : t; }
    bool operator==(const Record&) const = default;
};

// Locations are indices into `sorts`. Index 0 is conventionally nil.
struct Model {
    std::vector<LocSort> sorts;
    std::map<std::string, int> stack;
    std::map<int, Record> heap;

    int nil() const { return stack.at("nil"); }
    bool allocated(int l) const { return heap.count(l) > 0; }
    // img(s) ∪ dom(h) ∪ img(h)
    std::set<int> locs() const;
};

// Universe with one nil location followed by S, D and N blocks.
Model empty_model(int n_s, int n_d, int n_n);

struct UnboundVariable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPositive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural well-formedness of a model (nil unallocated, record shapes,
// stack typing against the sorts of the given formula's variables).
bool well_formed(const Model& m, std::string* why = nullptr);

bool evaluate(const Model& m, const Formula& f);

// All F ⊆ dom(h) with (s, h|F) ⊨ f, as sorted location sets.
std::set<std::set<int>> footprints_bruteforce(const Model& m, const Formula& f);

// The same set computed compositionally (footprints of atoms are unique).
std::set<std::set<int>> footprints(const Model& m, const Formula& f);

// Reference evaluator that splits the heap in every possible way for ⋆.
bool evaluate_by_splits(const Model& m, const Formula& f);

Model restrict_heap(const Model& m, const std::set<int>& dom);

struct Budget {
    int s = 0, d = 0, n = 0;
    int total() const { return s + d + n; }
};

struct EnumStats {
    uint64_t stacks = 0;
    uint64_t heaps = 0;
};

// Exhaustive search over stacks and heaps inside the budgeted universe.
// Returns a model with the fewest allocated cells, else nothing.
// Throws BudgetTooLarge when budget.total() exceeds cap.
std::optional<Model> enumerate(const Formula& f, Budget budget, int cap = 7,
                               EnumStats* stats = nullptr);

enum class ChunkKind { Pointer, Sls, Dls, Nls };
const char* chunk_kind_name(ChunkKind k);

struct Chunk {
    ChunkKind kind;
    // Stack-labelled locations of the chunk's atom: root, sink, and for dls
    // the last cell and the p-target of the root, for nls the inner sink.
    int root = -1, sink = -1, last = -1, back = -1, inner = -1;
    std::set<int> cells;
};

std::vector<Chunk> chunks(const Model& m);

// Restricts the stack to X (nil always kept) and shrinks every chunk.
Model reduce_model(const Model& m, const std::set<std::string>& X);

std::string to_json(const Model& m);
Model model_from_json(const std::string& text);
std::string to_dot(const Model& m);

}  // namespace bsl
