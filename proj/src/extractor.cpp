#include "procx/extractor.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

#include "json.hpp"
#include "procx/error.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Context {
  const ChunkSet& set;
  const DocTree& tree;
  const std::vector<NodeAnnotation>& notes;
  const std::vector<bool>& is_procedure;
  const std::map<int, std::string>& sequence_of;
};

/// First procedure chunk below `node`, searching level by level through the
/// chunks each node governs.
std::optional<std::string> dominated_procedure(const Context& ctx, NodeId node) {
  std::deque<int> queue(ctx.set.children_of(node).begin(), ctx.set.children_of(node).end());
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    if (ctx.is_procedure[static_cast<std::size_t>(c)]) return ctx.sequence_of.at(c);
    for (NodeId item : ctx.set.chunks[static_cast<std::size_t>(c)].items)
      for (int below : ctx.set.children_of(item)) queue.push_back(below);
  }
  return std::nullopt;
}

Step step_for(const Context& ctx, NodeId node, const SentenceAnnotation* begin, const SentenceAnnotation* end,
              std::string text) {
  Step s;
  s.text = std::move(text);
  for (auto it = begin; it != end; ++it) {
    s.actionable |= it->actionable;
    s.conditional |= it->conditional.has_value();
  }
  s.child_procedure_id = dominated_procedure(ctx, node);
  return s;
}

void add_list_item(const Context& ctx, NodeId item, const std::string& id, const std::optional<std::string>& parent,
                   std::vector<Step>& out) {
  const auto& sentences = ctx.notes.at(static_cast<std::size_t>(item)).sentences;
  Step s = step_for(ctx, item, sentences.data(), sentences.data() + sentences.size(),
                    trim(ctx.tree.node(item).text));
  s.step_id = id;
  s.parent_step_id = parent;
  out.push_back(std::move(s));
  int k = 0;
  for (NodeId child : ctx.tree.node(item).children) {
    if (ctx.tree.node(child).kind != NodeKind::ListBlock) continue;
    for (NodeId sub : ctx.tree.node(child).children) add_list_item(ctx, sub, id + "." + std::to_string(++k), id, out);
  }
}

std::string goal_for(const Chunk& chunk, const DocTree& tree) {
  if (!trim(chunk.context).empty()) return trim(chunk.context);
  const NodeId heading = tree.nearest_heading_ancestor(chunk.items.front());
  if (heading != kNoNode && !trim(tree.node(heading).text).empty()) return trim(tree.node(heading).text);
  return trim(tree.node(tree.root()).text);
}

}  // namespace

std::vector<Procedure> extract(const std::vector<ChunkPrediction>& predictions, const ChunkSet& set,
                               const DocTree& tree, const std::vector<NodeAnnotation>& notes) {
  std::vector<bool> is_procedure(set.chunks.size(), false);
  for (const auto& p : predictions) {
    if (p.chunk_id < 0 || static_cast<std::size_t>(p.chunk_id) >= set.chunks.size())
      throw DanglingLink("prediction for unknown chunk " + std::to_string(p.chunk_id));
    is_procedure[static_cast<std::size_t>(p.chunk_id)] = p.label;
  }
  std::map<int, std::string> sequence_of;
  for (const auto& c : set.chunks)
    if (is_procedure[static_cast<std::size_t>(c.id)])
      sequence_of[c.id] = "seq-" + std::to_string(sequence_of.size() + 1);

  const Context ctx{set, tree, notes, is_procedure, sequence_of};
  std::vector<Procedure> out;
  for (const auto& c : set.chunks) {
    if (!is_procedure[static_cast<std::size_t>(c.id)]) continue;
    Procedure proc;
    proc.sequence_id = sequence_of.at(c.id);
    proc.goal = goal_for(c, tree);
    int k = 0;
    for (NodeId item : c.items) {
      const auto& sentences = notes.at(static_cast<std::size_t>(item)).sentences;
      switch (c.kind) {
        case ChunkKind::List:
          add_list_item(ctx, item, std::to_string(++k), std::nullopt, proc.steps);
          break;
        case ChunkKind::HeadingGroup: {
          Step s = step_for(ctx, item, sentences.data(), sentences.data() + sentences.size(),
                            trim(tree.node(item).text));
          s.step_id = std::to_string(++k);
          proc.steps.push_back(std::move(s));
          break;
        }
        case ChunkKind::ParagraphGroup:
          if (sentences.empty()) {
            Step s = step_for(ctx, item, nullptr, nullptr, trim(tree.node(item).text));
            s.step_id = std::to_string(++k);
            proc.steps.push_back(std::move(s));
          }
          for (const auto& sa : sentences) {
            Step s = step_for(ctx, item, &sa, &sa + 1, trim(sa.sentence.text));
            s.step_id = std::to_string(++k);
            proc.steps.push_back(std::move(s));
          }
          break;
      }
    }
    out.push_back(std::move(proc));
  }
  check_links(out);
  return out;
}

void check_links(const std::vector<Procedure>& procedures) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < procedures.size(); ++i)
    if (!index.emplace(procedures[i].sequence_id, i).second)
      throw DanglingLink("duplicate sequenceId " + procedures[i].sequence_id);
  std::vector<std::vector<std::size_t>> edges(procedures.size());
  for (std::size_t i = 0; i < procedures.size(); ++i) {
    std::set<std::string> earlier;
    for (const auto& s : procedures[i].steps) {
      if (s.parent_step_id && !earlier.count(*s.parent_step_id))
        throw DanglingLink(procedures[i].sequence_id + " step " + s.step_id + ": parent step " + *s.parent_step_id +
                           " is not an earlier step");
      if (!earlier.insert(s.step_id).second)
        throw DanglingLink(procedures[i].sequence_id + ": duplicate step id " + s.step_id);
      if (s.child_procedure_id) {
        auto it = index.find(*s.child_procedure_id);
        if (it == index.end())
          throw DanglingLink(procedures[i].sequence_id + " step " + s.step_id + ": unknown procedure " +
                             *s.child_procedure_id);
        edges[i].push_back(it->second);
      }
    }
  }
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(procedures.size(), 0);
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    state[v] = 1;
    for (std::size_t w : edges[v]) {
      if (state[w] == 1) throw DanglingLink("procedure links form a cycle through " + procedures[w].sequence_id);
      if (state[w] == 0) visit(w);
    }
    state[v] = 2;
  };
  for (std::size_t v = 0; v < procedures.size(); ++v)
    if (state[v] == 0) visit(v);
}

std::string serialize(const std::vector<Procedure>& procedures) {
  ordered_json doc = ordered_json::array();
  for (const auto& p : procedures) {
    ordered_json steps = ordered_json::array();
    for (const auto& s : p.steps) {
      ordered_json js;
      js["stepId"] = s.step_id;
      js["text"] = s.text;
      js["actionable"] = s.actionable;
      js["conditional"] = s.conditional;
      if (s.parent_step_id) js["parentStepId"] = *s.parent_step_id;
      if (s.child_procedure_id) js["childProcedureId"] = *s.child_procedure_id;
      steps.push_back(std::move(js));
    }
    ordered_json jp;
    jp["sequenceId"] = p.sequence_id;
    jp["goal"] = p.goal;
    jp["stepList"] = std::move(steps);
    doc.push_back(std::move(jp));
  }
  return doc.dump(2);
}

std::vector<Procedure> parse_procedures(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text.begin(), text.end());
    std::vector<Procedure> out;
    for (const auto& jp : doc) {
      Procedure p;
      p.sequence_id = jp.at("sequenceId").get<std::string>();
      p.goal = jp.at("goal").get<std::string>();
      for (const auto& js : jp.at("stepList")) {
        Step s;
        s.step_id = js.at("stepId").get<std::string>();
        s.text = js.at("text").get<std::string>();
        s.actionable = js.at("actionable").get<bool>();
        s.conditional = js.at("conditional").get<bool>();
        if (js.contains("parentStepId")) s.parent_step_id = js["parentStepId"].get<std::string>();
        if (js.contains("childProcedureId")) s.child_procedure_id = js["childProcedureId"].get<std::string>();
        p.steps.push_back(std::move(s));
      }
      out.push_back(std::move(p));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("", std::string("procedure JSON: ") + e.what());
  }
}

}  // namespace procx
