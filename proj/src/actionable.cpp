#include "procx/actionable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "procx/csv.hpp"
#include "procx/error.hpp"
#include "procx/text.hpp"

namespace procx {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<std::string> sentence_words(const TaggedSentence& s) {
  std::vector<std::string> words;
  for (const auto& tok : s.tokens)
    if (tok.tag != Tag::PUNCT) words.push_back(to_lower(tok.surface));
  return words;
}

}  // namespace

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term,
                             [](const VocabTerm& t, std::string_view key) { return t.term < key; });
  if (it == terms.end() || it->term != term) return std::nullopt;
  return static_cast<std::size_t>(it - terms.begin());
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& sentences,
                            int min_document_frequency) {
  std::map<std::string, int> df;
  for (const auto& sentence : sentences) {
    std::set<std::string> unique(sentence.begin(), sentence.end());
    for (const auto& w : unique) ++df[w];
  }
  Vocabulary vocab;
  vocab.total_sentences = static_cast<int>(sentences.size());
  for (const auto& [term, count] : df) {
    if (count < min_document_frequency) continue;
    vocab.terms.push_back({term, count, std::log(static_cast<double>(vocab.total_sentences) / count)});
  }
  if (vocab.terms.empty()) throw EmptyCorpus("no term occurs in enough sentences to enter the vocabulary");
  return vocab;
}

Eigen::VectorXd featurize(const TaggedSentence& s, const Profile& p, const Vocabulary& vocab) {
  const auto n = static_cast<Eigen::Index>(vocab.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n + kLinguisticFeatures);
  for (const auto& w : sentence_words(s)) {
    if (auto idx = vocab.index_of(w)) x[static_cast<Eigen::Index>(*idx)] += vocab.terms[*idx].idf;
  }
  x[n] = p.tense == Tense::Present ? 1.0 : 0.0;
  x[n + 1] = p.voice == Voice::Active ? 1.0 : 0.0;
  x[n + 2] = p.polarity == Polarity::Positive ? 1.0 : 0.0;
  return x;
}

ActionableModel train_actionable(const std::vector<LabeledSentence>& labeled, const TrainParams& params,
                                 TrainReport* report) {
  const auto positives = std::count_if(labeled.begin(), labeled.end(), [](const auto& l) { return l.actionable; });
  const auto negatives = static_cast<long>(labeled.size()) - positives;
  if (positives < 2 || negatives < 2)
    throw DegenerateLabels("actionable training needs at least two sentences of each class");

  std::vector<std::vector<std::string>> words;
  words.reserve(labeled.size());
  for (const auto& l : labeled) words.push_back(sentence_words(l.sentence));

  ActionableModel model;
  model.vocabulary = build_vocabulary(words);
  const auto dim = static_cast<Eigen::Index>(model.vocabulary.size()) + kLinguisticFeatures;
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(labeled.size()), dim);
  std::vector<bool> labels;
  labels.reserve(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) =
        featurize(labeled[i].sentence, profile(labeled[i].sentence), model.vocabulary).transpose();
    labels.push_back(labeled[i].actionable);
  }
  model.linear = train_linear_svm(rows, labels, params, report);
  return model;
}

ActionablePrediction predict(const ActionableModel& model, const TaggedSentence& s, const Profile& p) {
  const double m = model.linear.margin(featurize(s, p, model.vocabulary));
  return {m >= 0.0, m};
}

std::string actionable_model_to_json(const ActionableModel& model) {
  ordered_json doc;
  doc["version"] = model.version;
  doc["total_sentences"] = model.vocabulary.total_sentences;
  ordered_json vocab = ordered_json::array();
  for (const auto& t : model.vocabulary.terms)
    vocab.push_back(ordered_json{{"term", t.term}, {"df", t.document_frequency}, {"idf", t.idf}});
  doc["vocabulary"] = std::move(vocab);
  doc["weights"] = std::vector<double>(model.linear.weights.begin(), model.linear.weights.end());
  doc["bias"] = model.linear.bias;
  ordered_json scaler = ordered_json::array();
  for (Eigen::Index i = 0; i < model.linear.scaler.dim(); ++i)
    scaler.push_back(ordered_json{{"min", model.linear.scaler.min[i]}, {"max", model.linear.scaler.max[i]}});
  doc["scaler"] = std::move(scaler);
  return doc.dump(2);
}

ActionableModel actionable_model_from_json(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw VersionMismatch("actionable model: not a JSON object");
  if (doc.value("version", std::string{}) != kActionableModelVersion)
    throw VersionMismatch("actionable model version '" + doc.value("version", std::string{}) +
                          "' is not '" + std::string(kActionableModelVersion) + "'");
  try {
    ActionableModel model;
    model.vocabulary.total_sentences = doc.at("total_sentences").get<int>();
    for (const auto& t : doc.at("vocabulary"))
      model.vocabulary.terms.push_back({t.at("term").get<std::string>(), t.at("df").get<int>(),
                                        t.at("idf").get<double>()});
    const auto weights = doc.at("weights").get<std::vector<double>>();
    const auto& scaler = doc.at("scaler");
    const auto dim = model.vocabulary.size() + kLinguisticFeatures;
    if (weights.size() != dim || scaler.size() != dim)
      throw VersionMismatch("actionable model: weight/scaler length does not match vocabulary");
    model.linear.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(dim));
    model.linear.bias = doc.at("bias").get<double>();
    model.linear.scaler.min.resize(static_cast<Eigen::Index>(dim));
    model.linear.scaler.max.resize(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      model.linear.scaler.min[static_cast<Eigen::Index>(i)] = scaler[i].at("min").get<double>();
      model.linear.scaler.max[static_cast<Eigen::Index>(i)] = scaler[i].at("max").get<double>();
      if (model.linear.scaler.min[static_cast<Eigen::Index>(i)] > model.linear.scaler.max[static_cast<Eigen::Index>(i)])
        throw VersionMismatch("actionable model: scaler min exceeds max");
    }
    return model;
  } catch (const json::exception& e) {
    throw VersionMismatch(std::string("actionable model: ") + e.what());
  }
}

std::vector<LabeledSentence> load_actionable_corpus(const std::string& path, const Tagger& tagger,
                                                    bool include_imperatives) {
  std::vector<LabeledSentence> out;
  const auto rows = read_csv_file(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && row.size() >= 2 && row[0] == "text" && row[1] == "label") continue;
    if (row.size() < 2 || (row[1] != "0" && row[1] != "1"))
      throw Error(path + ": line " + std::to_string(i + 1) + ": expected text,label with label 1 or 0");
    TaggedSentence s = tag_sentence(row[0], tagger);
    if (!include_imperatives && detect_imperative(s)) continue;
    out.push_back({std::move(s), row[1] == "1"});
  }
  return out;
}

}  // namespace procx
