// procx: extract procedures from structured technical documents.
//
// Exit codes: 0 ok, 1 other failure, 2 schema/hierarchy error in an input
// document, 64 usage error, 65 bad data or incompatible model file,
// 66 missing or unreadable input, 70 internal consistency failure.

#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "procx/csv.hpp"
#include "procx/error.hpp"
#include "procx/pipeline.hpp"
#include "procx/sdjson.hpp"

namespace fs = std::filesystem;
using namespace procx;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

struct Shared {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::string lexicon_dir;
  std::string dump_graphs;  // path or "-" for stderr
  bool no_propagation = false;
  std::string ablate;
  std::string actionable_model;
  std::string procedure_model;
};

RunConfig make_config(const Shared& shared, bool actionable, bool procedure) {
  RunConfig config;
  if (!shared.config_file.empty()) config.load_file(shared.config_file);
  if (shared.seed) config.seed = shared.seed;
  if (!shared.lexicon_dir.empty()) config.lexicon_dir = shared.lexicon_dir;
  if (!shared.actionable_model.empty()) config.actionable_model = shared.actionable_model;
  if (!shared.procedure_model.empty()) config.procedure_model = shared.procedure_model;
  const fs::path bundled = fs::path(PROCX_CORPUS_DIR) / "models";
  if (actionable && config.actionable_model.empty()) config.actionable_model = bundled / "actionable.json";
  if (procedure && config.procedure_model.empty()) config.procedure_model = bundled / "procedure.json";
  config.check_paths();
  return config;
}

ClassifyOptions classify_options(const Shared& shared) {
  ClassifyOptions o;
  o.propagation = !shared.no_propagation;
  if (!shared.ablate.empty()) o.ablate = parse_feature_ids(shared.ablate);
  return o;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << '\n';
  } else {
    write_file(path, content);
  }
}

std::string strip_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

void write_dump(const Shared& shared, const std::string& dump) {
  if (shared.dump_graphs.empty()) return;
  if (shared.dump_graphs == "-") {
    std::cerr << dump;
  } else {
    write_file(shared.dump_graphs, strip_newline(dump));
  }
}

std::optional<InputFormat> parse_format(const std::string& f) {
  if (f.empty()) return std::nullopt;
  if (f == "md" || f == "markdown") return InputFormat::Markdown;
  if (f == "sdjson") return InputFormat::Sdjson;
  if (f == "tree") return InputFormat::TreeJson;
  throw CLI::ValidationError("--format", "unknown format '" + f + "' (md, sdjson, tree)");
}

int cmd_ingest(const Shared&, const std::string& input, const std::string& format, const std::string& output) {
  const DocTree tree = load_document(input, parse_format(format));
  emit(output, tree_to_json(tree));
  return 0;
}

int cmd_extract(const Shared& shared, const std::vector<std::string>& inputs, const std::string& format,
                const std::string& output, const std::string& predictions) {
  const RunConfig config = make_config(shared, true, true);
  const Resources resources(config);
  const ClassifyOptions options = classify_options(shared);
  const auto fmt = parse_format(format);
  const bool dump = !shared.dump_graphs.empty() || config.dump.count("graphs");

  std::vector<std::future<DocumentResult>> jobs;
  for (const auto& in : inputs)
    jobs.push_back(std::async(std::launch::async, [&, in] {
      return run_document(load_document(in, fmt), resources, options, dump);
    }));
  std::vector<DocumentResult> results;
  for (auto& j : jobs) results.push_back(j.get());

  std::string dumps;
  for (const auto& r : results) dumps += r.analysis.graph_dump;
  if (!shared.dump_graphs.empty()) {
    write_dump(shared, dumps);
  } else if (dump) {
    std::cerr << dumps;
  }

  if (inputs.size() == 1) {
    emit(output, serialize(results[0].procedures));
    if (!predictions.empty()) write_file(predictions, strip_newline(prediction_log_csv(results[0].predictions)));
    return 0;
  }
  if (output.empty()) throw CLI::ValidationError("-o", "several inputs need an output directory");
  fs::create_directories(output);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string stem = fs::path(inputs[i]).stem().string();
    write_file(fs::path(output) / (stem + ".procedures.json"), serialize(results[i].procedures));
    write_file(fs::path(output) / (stem + ".predictions.csv"), strip_newline(prediction_log_csv(results[i].predictions)));
  }
  return 0;
}

int cmd_train_actionable(const Shared& shared, const std::string& corpus, const std::string& output,
                         bool include_imperatives) {
  RunConfig config = make_config(shared, false, false);
  const Resources resources(config);
  const auto labeled = load_actionable_corpus(corpus, resources.tagger(), include_imperatives);
  TrainReport report;
  const ActionableModel model = train_actionable(labeled, config.train_params(), &report);
  std::cerr << "actionable: " << labeled.size() << " sentences, " << model.vocabulary.size()
            << " terms, training accuracy " << report.train_accuracy << '\n';
  emit(output, actionable_model_to_json(model));
  return 0;
}

int cmd_features(const Shared& shared, const std::vector<std::string>& inputs, const std::string& labels,
                 const std::string& manifest, const std::string& split, const std::string& output, bool chunks,
                 bool label_template) {
  const RunConfig config = make_config(shared, true, false);
  const Resources resources(config);
  std::vector<FeatureRow> rows;
  std::string text;
  if (!manifest.empty()) {
    if (chunks || label_template) throw CLI::ValidationError("--manifest", "cannot be combined with --chunks/--template");
    rows = training_rows(load_corpus(manifest, resources), split == "all" ? "" : split);
    emit(output, strip_newline(feature_rows_to_csv(rows)));
    return 0;
  }
  if (inputs.empty()) throw CLI::ValidationError("inputs", "give documents or --manifest");
  if (!labels.empty() && inputs.size() != 1) throw CLI::ValidationError("--labels", "needs exactly one input");
  for (const auto& in : inputs) {
    const DocumentAnalysis doc = analyze_document(load_document(in), resources, !shared.dump_graphs.empty());
    write_dump(shared, doc.graph_dump);
    if (chunks) {
      text += chunks_to_csv(doc.chunks);
      continue;
    }
    if (label_template) {
      text += gold_template_csv(doc);
      continue;
    }
    if (!labels.empty()) {
      const auto gold = load_gold(labels, doc);
      const auto forced = gold_propagated_features(doc.chunks, doc.units, doc.features, gold);
      for (std::size_t i = 0; i < forced.size(); ++i)
        rows.push_back({doc.tree.source_name() + "#" + std::to_string(i), forced[i], static_cast<bool>(gold[i])});
    } else {
      for (std::size_t i = 0; i < doc.features.size(); ++i)
        rows.push_back({doc.tree.source_name() + "#" + std::to_string(i), doc.features[i], std::nullopt});
    }
  }
  if (!chunks && !label_template) text = feature_rows_to_csv(rows);
  emit(output, strip_newline(text));
  return 0;
}

int cmd_train(const Shared& shared, const std::string& features, const std::string& output) {
  RunConfig config = make_config(shared, false, false);
  const auto rows = feature_rows_from_csv(features);
  std::vector<FeatureVector> x;
  std::vector<bool> y;
  for (const auto& r : rows) {
    if (!r.label) throw Error(features + ": training rows need a label column");
    x.push_back(r.features);
    y.push_back(*r.label);
  }
  TrainReport report;
  const ProcedureModel model = train_procedure(x, y, config.train_params(), &report);
  std::cerr << "procedure: " << rows.size() << " chunks, training accuracy " << report.train_accuracy << '\n';
  emit(output, procedure_model_to_json(model));
  return 0;
}

std::map<std::string, bool> read_labels(const std::string& path, std::size_t label_column) {
  std::map<std::string, bool> out;
  const auto rows = read_csv_file(path);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && !row.empty() && row[0] == "chunk_id") continue;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() <= label_column || (row[label_column] != "0" && row[label_column] != "1"))
      throw Error(path + ": line " + std::to_string(r + 1) + ": expected a 0/1 label in column " +
                  std::to_string(label_column + 1));
    out[row[0]] = row[label_column] == "1";
  }
  return out;
}

void print_metrics(const Metrics& m) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.4f,%.4f,%.4f", m.accuracy, m.precision, m.recall);
  std::cout << "accuracy,precision,recall\n" << buf << '\n';
  if (m.precision_undefined) std::cerr << "note: no positive predictions; precision reported as 0\n";
  if (m.recall_undefined) std::cerr << "note: no positive gold labels; recall reported as 0\n";
}

int cmd_eval(const Shared& shared, const std::string& predictions, const std::string& gold,
             const std::string& manifest, const std::string& split) {
  if (!manifest.empty()) {
    const RunConfig config = make_config(shared, true, true);
    const Resources resources(config);
    const auto docs = load_corpus(manifest, resources);
    print_metrics(evaluate_corpus(docs, *resources.procedure(), classify_options(shared), split == "all" ? "" : split));
    return 0;
  }
  if (predictions.empty() || gold.empty())
    throw CLI::ValidationError("eval", "give a prediction log and a gold file, or --manifest");
  print_metrics(evaluate(read_labels(predictions, 2), read_labels(gold, 1)));
  return 0;
}

int cmd_ablate(const Shared& shared, const std::string& manifest, const std::string& which,
               const std::string& split, const std::string& output) {
  const RunConfig config = make_config(shared, true, true);
  const Resources resources(config);
  const auto docs = load_corpus(manifest, resources);
  auto rows = ablate_corpus(docs, config.train_params(), split == "all" ? "" : split);
  if (!which.empty()) {
    const auto ids = parse_feature_ids(which);
    std::vector<AblationRow> picked{rows.front()};
    bool matched = false;
    for (const auto& r : rows)
      if (r.features == ids) {
        picked.push_back(r);
        matched = true;
      }
    if (!matched) {
      // An arbitrary feature set rather than a category.
      const auto train = training_rows(docs, "train");
      std::vector<FeatureVector> x;
      std::vector<bool> y;
      for (const auto& r : train) {
        x.push_back(mask_features(r.features, ids));
        y.push_back(*r.label);
      }
      ClassifyOptions options;
      options.ablate = ids;
      const auto model = train_procedure(x, y, config.train_params());
      picked.push_back({which, ids, evaluate_corpus(docs, model, options, split == "all" ? "" : split)});
    }
    rows = std::move(picked);
  }
  emit(output, strip_newline(ablation_report_csv(rows)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extract procedures from structured technical documents."};
  app.require_subcommand(1);
  app.fallthrough();
  Shared shared;
  app.add_option("--config", shared.config_file, "key=value configuration file");
  app.add_option("--seed", shared.seed, "Seed for training");
  app.add_option("--lexicon-dir", shared.lexicon_dir, "Directory overriding the bundled tagger lexicon");
  app.add_option("--dump-graphs", shared.dump_graphs, "Write per-chunk entity graphs to a file ('-' for stderr)");
  app.add_flag("--no-propagation", shared.no_propagation, "Freeze the propagated features at 0");
  app.add_option("--ablate", shared.ablate, "Zero these features at inference (ids, ranges or categories)");
  app.add_option("--actionable-model", shared.actionable_model, "Actionable sentence model");
  app.add_option("--procedure-model", shared.procedure_model, "Procedure classifier model");

  std::string format, output, predictions, labels, manifest, which;
  std::string features_split = "train", eval_split = "all", ablate_split = "test";
  std::vector<std::string> inputs;
  std::string input, corpus, gold;
  bool include_imperatives = false, chunks = false, label_template = false;

  auto* ingest = app.add_subcommand("ingest", "Parse a document into canonical tree JSON");
  ingest->add_option("input", input, "Markdown or sdjson document")->required();
  ingest->add_option("-f,--format", format, "md, sdjson or tree (default: by extension/content)");
  ingest->add_option("-o,--output", output, "Output file (default stdout)");

  auto* extract = app.add_subcommand("extract", "Extract procedures as JSON");
  extract->add_option("inputs", inputs, "Documents")->required();
  extract->add_option("-f,--format", format, "Input format for every document");
  extract->add_option("-o,--output", output, "Output file, or directory for several inputs");
  extract->add_option("--predictions", predictions, "Write the chunk prediction log (single input)");

  auto* train_act = app.add_subcommand("train-actionable", "Train the actionable sentence model");
  train_act->add_option("corpus", corpus, "CSV text,label")->required();
  train_act->add_option("-o,--output", output, "Model file (default stdout)");
  train_act->add_flag("--include-imperatives", include_imperatives, "Keep imperative sentences in training");

  auto* train = app.add_subcommand("train", "Train the procedure classifier from a feature CSV");
  train->add_option("features", corpus, "Feature CSV with labels")->required();
  train->add_option("-o,--output", output, "Model file (default stdout)");

  auto* features = app.add_subcommand("features", "Dump chunk features, chunks or a label template");
  features->add_option("inputs", inputs, "Documents");
  features->add_option("--labels", labels, "Gold labels for one document (teacher-forced f6/f7)");
  features->add_option("--manifest", manifest, "Corpus manifest; writes labeled rows");
  features->add_option("--split", features_split, "train, test or all (with --manifest)")->capture_default_str();
  features->add_option("-o,--output", output, "Output file (default stdout)");
  features->add_flag("--chunks", chunks, "Write the chunk table instead");
  features->add_flag("--template", label_template, "Write a label file template instead");

  auto* eval = app.add_subcommand("eval", "Score predictions against gold labels");
  eval->add_option("predictions", predictions, "Prediction log CSV");
  eval->add_option("gold", gold, "Gold label CSV");
  eval->add_option("--manifest", manifest, "Run the pipeline over a corpus instead");
  eval->add_option("--split", eval_split, "train, test or all (with --manifest)")->capture_default_str();

  auto* ablate = app.add_subcommand("ablate", "Feature-category ablation report");
  ablate->add_option("--manifest", manifest, "Corpus manifest")->required();
  ablate->add_option("--features", which, "Only this category or feature list");
  ablate->add_option("--split", ablate_split, "Evaluation split: train, test or all")->capture_default_str();
  ablate->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(shared, input, format, output);
    if (*extract) return cmd_extract(shared, inputs, format, output, predictions);
    if (*train_act) return cmd_train_actionable(shared, corpus, output, include_imperatives);
    if (*train) return cmd_train(shared, corpus, output);
    if (*features) return cmd_features(shared, inputs, labels, manifest, features_split, output, chunks, label_template);
    if (*eval) return cmd_eval(shared, predictions, gold, manifest, eval_split);
    if (*ablate) return cmd_ablate(shared, manifest, which, ablate_split, output);
  } catch (const CLI::ParseError& e) {
    std::cerr << "procx: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "procx: " << e.what() << '\n';
    return kExitSchema;
  } catch (const HierarchyError& e) {
    std::cerr << "procx: " << e.what() << '\n';
    return kExitSchema;
  } catch (const IoError& e) {
    std::cerr << "procx: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const PropagationOrderError& e) {
    std::cerr << "procx: internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const DanglingLink& e) {
    std::cerr << "procx: internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "procx: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "procx: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
