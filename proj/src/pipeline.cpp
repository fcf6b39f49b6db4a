#include "procx/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <future>
#include <sstream>

#include "procx/csv.hpp"
#include "procx/error.hpp"
#include "procx/sdjson.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

double parse_positive(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size() || !(v > 0.0))
    throw Error("config: " + key + " needs a positive number, got '" + value + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& value) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size()) throw Error("config: seed must be an unsigned integer");
  return v;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "lexicon_dir") {
    lexicon_dir = value;
  } else if (key == "cue_file") {
    cue_file = value;
  } else if (key == "context_procedural") {
    context_procedural = value;
  } else if (key == "context_nonprocedural") {
    context_nonprocedural = value;
  } else if (key == "actionable_model") {
    actionable_model = value;
  } else if (key == "procedure_model") {
    procedure_model = value;
  } else if (key == "seed") {
    seed = parse_seed(value);
  } else if (key == "epochs") {
    train.epochs = static_cast<int>(parse_positive(key, value));
  } else if (key == "learning_rate") {
    train.learning_rate = parse_positive(key, value);
  } else if (key == "l2") {
    train.l2 = parse_positive(key, value);
  } else if (key == "role_weights") {
    std::vector<double> w;
    std::istringstream in(value);
    std::string part;
    while (std::getline(in, part, ',')) w.push_back(parse_positive(key, trim(part)));
    if (w.size() != 3) throw Error("config: role_weights takes subject,object,other");
    role_weights = {w[0], w[1], w[2]};
  } else if (key == "dump") {
    std::istringstream in(value);
    std::string part;
    while (std::getline(in, part, ',')) {
      part = trim(part);
      if (part != "graphs") throw Error("config: unknown dump flag '" + part + "'");
      dump.insert(part);
    }
  } else {
    throw Error("config: unknown key '" + key + "'");
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    std::string value = trim(std::string_view(line).substr(eq + 1));
    const std::string key = trim(std::string_view(line).substr(0, eq));
    // Relative paths in a config file are relative to the file.
    static const std::set<std::string> path_keys = {"lexicon_dir",           "cue_file",
                                                    "context_procedural",    "context_nonprocedural",
                                                    "actionable_model",      "procedure_model"};
    if (path_keys.count(key) && !value.empty() && std::filesystem::path(value).is_relative())
      value = (path.parent_path() / value).string();
    set(key, value);
  }
}

void RunConfig::check_paths() const {
  for (const auto* p : {&lexicon_dir, &cue_file, &context_procedural, &context_nonprocedural, &actionable_model,
                        &procedure_model})
    if (!p->empty() && !std::filesystem::exists(*p)) throw IoError("no such file or directory: " + p->string());
}

TrainParams RunConfig::train_params() const {
  if (!seed) throw Error("training needs a seed (--seed or seed= in the config)");
  TrainParams p = train;
  p.seed = *seed;
  return p;
}

Resources::Resources(const RunConfig& config)
    : lexicon_(std::make_unique<Lexicon>(
          Lexicon::load(config.lexicon_dir.empty() ? Lexicon::bundled_dir() : config.lexicon_dir))),
      tagger_(std::make_unique<RuleTagger>(*lexicon_)),
      goal_cues_(config.cue_file.empty() ? GoalCues::bundled() : GoalCues::load(config.cue_file)),
      context_cues_(ContextCues::bundled()),
      role_weights_(config.role_weights) {
  if (!config.context_procedural.empty() || !config.context_nonprocedural.empty()) {
    const auto data = std::filesystem::path(PROCX_DATA_DIR);
    context_cues_ = ContextCues::load(
        config.context_procedural.empty() ? data / "context_procedural.txt" : config.context_procedural,
        config.context_nonprocedural.empty() ? data / "context_nonprocedural.txt" : config.context_nonprocedural);
  }
  if (!config.actionable_model.empty()) actionable_ = load_actionable_model(config.actionable_model);
  if (!config.procedure_model.empty()) procedure_ = load_procedure_model(config.procedure_model);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

ActionableModel load_actionable_model(const std::filesystem::path& path) {
  return actionable_model_from_json(read_file(path));
}

ProcedureModel load_procedure_model(const std::filesystem::path& path) {
  return procedure_model_from_json(read_file(path));
}

DocumentAnalysis analyze_document(DocTree tree, const Resources& resources, bool dump_graphs) {
  DocumentAnalysis doc;
  doc.tree = std::move(tree);
  doc.chunks = build_chunks(doc.tree);
  const Annotator annotator(resources.tagger(), resources.actionable(), resources.goal_cues());
  doc.notes = annotator.annotate_tree(doc.tree);
  std::ostringstream dump;
  for (const auto& chunk : doc.chunks.chunks) {
    auto units = chunk_units(chunk, doc.tree, doc.notes);
    const auto sentences = chunk_sentences(chunk, doc.notes);
    std::vector<Entity> entities;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      auto found = extract_entities(sentences[i], i);
      entities.insert(entities.end(), found.begin(), found.end());
    }
    const auto projection = project(build_bipartite(sentences.size(), entities, resources.role_weights()));
    const double score = relatedness_score(projection);

    GoalAnnotation governing_goal;
    const DocNode& governing = doc.tree.node(chunk.governing);
    if (governing.kind == NodeKind::Heading) {
      const auto& s = doc.notes[static_cast<std::size_t>(chunk.governing)].sentences;
      if (!s.empty()) governing_goal = s.front().goal;
    }
    doc.features.push_back(
        compute_static_features(chunk, doc.tree, units, governing_goal, score, resources.context_cues()));
    doc.units.push_back(std::move(units));
    if (dump_graphs) {
      dump << doc.tree.source_name() << " chunk " << chunk.id << " (" << to_string(chunk.kind) << ", "
           << sentences.size() << " sentences)\n"
           << dump_graph(entities, projection, score);
    }
  }
  doc.graph_dump = dump.str();
  return doc;
}

DocumentResult run_document(DocTree tree, const Resources& resources, const ClassifyOptions& options,
                            bool dump_graphs) {
  if (!resources.procedure()) throw Error("no procedure model loaded");
  DocumentResult result;
  result.analysis = analyze_document(std::move(tree), resources, dump_graphs);
  const auto& a = result.analysis;
  result.predictions = classify_tree(a.chunks, a.units, a.features, *resources.procedure(), options);
  result.procedures = extract(result.predictions, a.chunks, a.tree, a.notes);
  return result;
}

namespace {

std::string first_item_text(const DocumentAnalysis& doc, const Chunk& c) {
  std::string text = trim(doc.tree.node(c.items.front()).text);
  if (text.size() > 40) {
    std::size_t cut = 40;
    while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;  // keep UTF-8 whole
    text.resize(cut);
  }
  return text;
}

}  // namespace

std::vector<bool> load_gold(const std::filesystem::path& path, const DocumentAnalysis& doc) {
  const auto rows = read_csv_file(path.string());
  const std::size_t n = doc.chunks.chunks.size();
  std::vector<std::optional<bool>> labels(n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && !row.empty() && row[0] == "chunk_id") continue;
    if (row.size() == 1 && row[0].empty()) continue;
    const std::string where = path.string() + ": line " + std::to_string(r + 1) + ": ";
    if (row.size() < 2) throw Error(where + "expected chunk_id,label[,first_item]");
    int id = -1;
    auto [p, ec] = std::from_chars(row[0].data(), row[0].data() + row[0].size(), id);
    if (ec != std::errc{} || p != row[0].data() + row[0].size() || id < 0 || static_cast<std::size_t>(id) >= n)
      throw Error(where + "no chunk '" + row[0] + "' in " + doc.tree.source_name());
    if (row[1] != "0" && row[1] != "1") throw Error(where + "label must be 0 or 1");
    if (row.size() >= 3) {
      const std::string actual = trim(doc.tree.node(doc.chunks.chunks[static_cast<std::size_t>(id)].items.front()).text);
      if (actual.compare(0, row[2].size(), row[2]) != 0)
        throw Error(where + "chunk " + row[0] + " starts with '" + first_item_text(doc, doc.chunks.chunks[static_cast<std::size_t>(id)]) +
                    "', labels expect '" + row[2] + "'");
    }
    labels[static_cast<std::size_t>(id)] = row[1] == "1";
  }
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!labels[i]) throw Error(path.string() + ": chunk " + std::to_string(i) + " has no label");
    out[i] = *labels[i];
  }
  return out;
}

std::string gold_template_csv(const DocumentAnalysis& doc, const std::vector<bool>* labels) {
  std::ostringstream out;
  out << "chunk_id,label,first_item\n";
  for (const auto& c : doc.chunks.chunks) {
    const std::string label = labels ? ((*labels)[static_cast<std::size_t>(c.id)] ? "1" : "0") : "";
    out << csv_line({std::to_string(c.id), label, first_item_text(doc, c)}) << '\n';
  }
  return out.str();
}

std::vector<CorpusEntry> load_manifest(const std::filesystem::path& path) {
  const auto rows = read_csv_file(path.string());
  const auto base = path.parent_path();
  std::vector<CorpusEntry> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && !row.empty() && row[0] == "document") continue;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 3 || (row[2] != "train" && row[2] != "test"))
      throw Error(path.string() + ": line " + std::to_string(r + 1) + ": expected document,labels,train|test");
    out.push_back({base / row[0], base / row[1], row[2]});
  }
  return out;
}

std::vector<LabeledDocument> load_corpus(const std::filesystem::path& manifest, const Resources& resources) {
  const auto entries = load_manifest(manifest);
  std::vector<std::future<LabeledDocument>> jobs;
  for (const auto& e : entries) {
    jobs.push_back(std::async(std::launch::async, [&resources, e] {
      LabeledDocument doc;
      doc.split = e.split;
      doc.analysis = analyze_document(load_document(e.document.string()), resources);
      doc.name = doc.analysis.tree.source_name();
      doc.gold = load_gold(e.labels, doc.analysis);
      return doc;
    }));
  }
  std::vector<LabeledDocument> docs;
  for (auto& j : jobs) docs.push_back(j.get());
  return docs;
}

std::vector<FeatureRow> training_rows(const std::vector<LabeledDocument>& docs, const std::string& split) {
  std::vector<FeatureRow> rows;
  for (const auto& d : docs) {
    if (!split.empty() && d.split != split) continue;
    const auto& a = d.analysis;
    const auto forced = gold_propagated_features(a.chunks, a.units, a.features, d.gold);
    for (std::size_t i = 0; i < forced.size(); ++i)
      rows.push_back({d.name + "#" + std::to_string(i), forced[i], static_cast<bool>(d.gold[i])});
  }
  return rows;
}

Metrics evaluate_corpus(const std::vector<LabeledDocument>& docs, const ProcedureModel& model,
                        const ClassifyOptions& options, const std::string& split) {
  std::map<std::string, bool> predicted, gold;
  for (const auto& d : docs) {
    if (!split.empty() && d.split != split) continue;
    const auto& a = d.analysis;
    for (const auto& p : classify_tree(a.chunks, a.units, a.features, model, options))
      predicted[d.name + "#" + std::to_string(p.chunk_id)] = p.label;
    for (std::size_t i = 0; i < d.gold.size(); ++i) gold[d.name + "#" + std::to_string(i)] = d.gold[i];
  }
  return evaluate(predicted, gold);
}

std::vector<AblationRow> ablate_corpus(const std::vector<LabeledDocument>& docs, const TrainParams& params,
                                       const std::string& eval_split) {
  const auto rows = training_rows(docs, "train");
  std::vector<AblationRow> report;
  std::vector<std::pair<std::string, std::set<int>>> runs = {{"None", {}}};
  for (const auto& c : feature_categories()) runs.push_back(c);
  for (const auto& [category, ids] : runs) {
    std::vector<FeatureVector> x;
    std::vector<bool> y;
    for (const auto& r : rows) {
      x.push_back(mask_features(r.features, ids));
      y.push_back(*r.label);
    }
    const ProcedureModel model = train_procedure(x, y, params);
    ClassifyOptions options;
    options.ablate = ids;
    report.push_back({category, ids, evaluate_corpus(docs, model, options, eval_split)});
  }
  return report;
}

}  // namespace procx
