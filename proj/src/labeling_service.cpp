// Copyright 2026 The Ambient Corpus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ambient/labeling_service.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <httplib.h>
#include <json.hpp>

#include "ambient/random.hpp"

namespace ambient {

using json = nlohmann::json;

SamplingStrategy parse_strategy(std::string_view name) {
  if (name == "random") return SamplingStrategy::Random;
  if (name == "uncertainty") return SamplingStrategy::Uncertainty;
  throw ValidationError("unknown sampling strategy: " + std::string(name));
}

std::string_view to_string(SamplingStrategy s) { return s == SamplingStrategy::Random ? "random" : "uncertainty"; }

std::string next_to_label(LabelSession& session, const LabelStore& store, const std::map<std::string, double>* scores) {
  auto available = [&](const std::string& id) { return !store.get(id) && !session.skipped.count(id); };

  if (session.strategy == SamplingStrategy::Random) {
    while (session.cursor < session.order.size() && !available(session.order[session.cursor])) ++session.cursor;
    if (session.cursor == session.order.size()) throw ExhaustedSample("no unlabeled documents remain");
    return session.order[session.cursor];
  }

  const std::string* best = nullptr;
  double best_distance = std::numeric_limits<double>::infinity();
  std::size_t consumed = 0;
  for (const auto& id : session.order) {
    if (!available(id)) {
      ++consumed;
      continue;
    }
    double distance = std::numeric_limits<double>::infinity();
    if (scores) {
      if (auto it = scores->find(id); it != scores->end()) distance = std::abs(it->second - 0.5);
    }
    if (!best || distance < best_distance || (distance == best_distance && id < *best)) {
      best = &id;
      best_distance = distance;
    }
  }
  session.cursor = consumed;
  if (!best) throw ExhaustedSample("no unlabeled documents remain");
  return *best;
}

LabelingService::LabelingService(std::vector<Document> corpus, LabelStore& store, Options options)
    : corpus_(std::move(corpus)), store_(store), options_(std::move(options)) {
  for (std::size_t i = 0; i < corpus_.size(); ++i) by_id_.emplace(corpus_[i].id, i);
  if (!options_.clock)
    options_.clock = [] {
      return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
}

LabelSession& LabelingService::session_locked(const std::string& name) {
  auto it = sessions_.find(name);
  if (it != sessions_.end()) return it->second;
  LabelSession s;
  s.id = name;
  s.strategy = options_.strategy;
  s.order.reserve(corpus_.size());
  for (const auto& d : corpus_) s.order.push_back(d.id);
  if (s.strategy == SamplingStrategy::Random) {
    Rng rng(options_.seed);
    rng.shuffle(s.order);
  }
  return sessions_.emplace(name, std::move(s)).first->second;
}

const Document& LabelingService::next(const std::string& session) {
  std::lock_guard lock(mutex_);
  LabelSession& s = session_locked(session);
  const std::string id = next_to_label(s, store_, options_.scores.empty() ? nullptr : &options_.scores);
  return corpus_[by_id_.at(id)];
}

std::pair<LabelEntry, LabelStore::AppendResult> LabelingService::label(const std::string& id, Label label,
                                                                       const std::string& session) {
  std::lock_guard lock(mutex_);
  if (!by_id_.count(id)) throw UnknownDocument("unknown document id: " + id);
  LabelSession& s = session_locked(session);
  LabelEntry entry{id, label, LabelSource::Human, std::nullopt, options_.clock()};
  const auto result = store_.append(entry);
  if (result == LabelStore::AppendResult::Appended) {
    ++(label == Label::R ? s.counts.r : s.counts.nr);
    if (s.skipped.erase(id)) --s.counts.skipped;
  }
  return {*store_.get(id), result};
}

void LabelingService::skip(const std::string& id, const std::string& session) {
  std::lock_guard lock(mutex_);
  if (!by_id_.count(id)) throw UnknownDocument("unknown document id: " + id);
  LabelSession& s = session_locked(session);
  if (!store_.get(id) && s.skipped.insert(id).second) ++s.counts.skipped;
}

Progress LabelingService::progress(const std::optional<std::string>& session) const {
  std::lock_guard lock(mutex_);
  std::set<std::string> skipped;
  for (const auto& [name, s] : sessions_)
    if (!session || name == *session) skipped.insert(s.skipped.begin(), s.skipped.end());

  Progress p;
  for (const auto& d : corpus_) {
    auto entry = store_.get(d.id);
    if (entry && entry->source == LabelSource::Human) {
      ++(entry->label == Label::R ? p.labeled_r : p.labeled_nr);
    } else if (skipped.count(d.id)) {
      ++p.skipped;
    } else {
      ++p.remaining;
    }
  }
  const std::size_t labeled = p.labeled_r + p.labeled_nr;
  if (labeled > 0) p.percent_r = 100.0 * static_cast<double>(p.labeled_r) / static_cast<double>(labeled);
  return p;
}

const Document& LabelingService::document(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw UnknownDocument("unknown document id: " + id);
  return corpus_[it->second];
}

std::string LabelingService::export_labels() const {
  std::string out;
  for (const auto& e : store_.resolved()) out += serialize_label(e) + '\n';
  return out;
}

namespace {

json document_json(const Document& d, const std::map<std::string, double>& scores) {
  json j = {{"id", d.id}, {"ts", d.timestamp}, {"text", d.text}};
  if (d.location_raw) j["loc"] = *d.location_raw;
  if (d.language) j["lang"] = *d.language;
  if (auto it = scores.find(d.id); it != scores.end()) j["score"] = it->second;
  return j;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, json{{"error", message}});
}

}  // namespace

struct LabelingServer::Impl {
  LabelingService& service;
  httplib::Server server;
  std::map<std::string, double> no_scores;

  explicit Impl(LabelingService& s) : service(s) {}
};

LabelingServer::LabelingServer(LabelingService& service, std::string static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  LabelingService& svc = service;
  const auto& no_scores = impl_->no_scores;

  auto parse_body = [](const httplib::Request& req) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) throw ValidationError("request body must be a JSON object");
    if (!body.contains("id") || !body["id"].is_string()) throw ValidationError("request body needs a string 'id'");
    return body;
  };
  auto session_of = [](const json& body) {
    auto it = body.find("session");
    return it != body.end() && it->is_string() ? it->get<std::string>() : std::string("default");
  };
  auto guarded = [](auto handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const UnknownDocument& e) {
        send_error(res, 404, e.what());
      } catch (const ExhaustedSample& e) {
        send_error(res, 410, e.what());
      } catch (const ValidationError& e) {
        send_error(res, 400, e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      }
    };
  };

  srv.Get("/api/next", guarded([&svc, &no_scores](const httplib::Request& req, httplib::Response& res) {
            const std::string session = req.has_param("session") ? req.get_param_value("session") : "default";
            send_json(res, 200, document_json(svc.next(session), no_scores));
          }));
  srv.Post("/api/label", guarded([&svc, parse_body, session_of](const httplib::Request& req, httplib::Response& res) {
             const json body = parse_body(req);
             if (!body.contains("label") || !body["label"].is_string())
               throw ValidationError("request body needs a string 'label'");
             const auto [entry, result] =
                 svc.label(body["id"].get<std::string>(), parse_label(body["label"].get<std::string>()), session_of(body));
             send_json(res, 200,
                       json{{"ok", true},
                            {"result", result == LabelStore::AppendResult::Appended ? "appended" : "unchanged"},
                            {"entry", json::parse(serialize_label(entry))}});
           }));
  srv.Post("/api/skip", guarded([&svc, parse_body, session_of](const httplib::Request& req, httplib::Response& res) {
             const json body = parse_body(req);
             svc.skip(body["id"].get<std::string>(), session_of(body));
             send_json(res, 200, json{{"ok", true}});
           }));
  srv.Get("/api/progress", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            std::optional<std::string> session;
            if (req.has_param("session")) session = req.get_param_value("session");
            const Progress p = svc.progress(session);
            send_json(res, 200,
                      json{{"labeled_R", p.labeled_r},
                           {"labeled_NR", p.labeled_nr},
                           {"skipped", p.skipped},
                           {"remaining", p.remaining},
                           {"percent_R", p.percent_r ? json(*p.percent_r) : json(nullptr)}});
          }));
  srv.Get(R"(/api/doc/(.+))", guarded([&svc, &no_scores](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, document_json(svc.document(req.matches[1].str()), no_scores));
          }));
  srv.Get("/api/export", guarded([&svc](const httplib::Request&, httplib::Response& res) {
            res.status = 200;
            res.set_content(svc.export_labels(), "application/x-ndjson");
          }));
  if (!static_dir.empty() && !srv.set_mount_point("/", static_dir))
    throw ValidationError("static asset directory not found: " + static_dir);
}

LabelingServer::~LabelingServer() = default;

int LabelingServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw Error("cannot bind " + host + ":" + std::to_string(port) + " (address in use?)");
  return port;
}

void LabelingServer::listen() { impl_->server.listen_after_bind(); }

void LabelingServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void LabelingServer::stop() { impl_->server.stop(); }

std::pair<std::string, int> parse_bind_address(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) throw ValidationError("bind address must be host:port");
  try {
    std::size_t used = 0;
    const int port = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1 || port < 0 || port > 65535) throw std::out_of_range("port");
    return {text.substr(0, colon), port};
  } catch (const std::exception&) {
    throw ValidationError("bad port in bind address: " + text);
  }
}

}  // namespace ambient
