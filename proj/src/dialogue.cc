/*
 * Copyright (C) 2026 The Situ Talker Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "situ/dialogue.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "situ/errors.h"
#include "situ/recognizer.h"
#include "situ/semantics.h"

namespace situ::dialogue {
namespace {

// Built-in wording for the system templates a world may leave out.
const std::map<std::string, std::string, std::less<>>& DefaultSpoken() {
  static const auto* defaults = new std::map<std::string, std::string, std::less<>>{
      {"prompt-again", "Sorry, I did not catch that. Please say it again."},
      {"no-parse", "Sorry, I did not understand. Could you rephrase that?"},
      {"no-intention", "Sorry, I cannot help with that here."},
      {"ambiguous", "Which kind of {surface}, a {options}?"},
      {"unresolved", "What do you mean by {expression}?"},
      {"out-of-range", "Please choose from the list."},
      {"apology", "I don't have that information."},
      {"fallback", "I see."},
      {"already-here", "You are still at {situation}."},
      {"no-code", "No code recognized."},
  };
  return *defaults;
}

ResponseTemplate SystemTemplate(const TemplateSet* templates,
                                std::string_view name) {
  if (templates != nullptr) {
    if (const ResponseTemplate* found = templates->Find(name)) return *found;
  }
  const auto it = DefaultSpoken().find(name);
  if (it == DefaultSpoken().end()) {
    throw ContractError("no system template " + std::string(name));
  }
  return ResponseTemplate{std::string(name), it->second, std::nullopt};
}

std::string Dashless(std::string text) {
  std::replace(text.begin(), text.end(), '-', ' ');
  return text;
}

// ---------------------------------------------------------------------------
// Template evaluation

using Item = std::variant<Filler, const Fact*, std::string>;

struct Value {
  std::vector<Item> items;
  bool is_list = false;
};

std::string FactText(const Fact& fact) {
  for (const char* attr : {"label", "name"}) {
    if (const AttributeValue* value = fact.Attribute(attr)) {
      if (const auto* text = std::get_if<std::string>(value)) return *text;
    }
  }
  return Dashless(fact.key);
}

std::optional<Item> AttributeItem(const std::string& text,
                                  const KnowledgeBase& kb) {
  if (!text.empty() && text.front() == '@') {
    const Fact* target = kb.Find(std::string_view(text).substr(1));
    if (target == nullptr) return std::nullopt;
    return Item{target};
  }
  return Item{text};
}

std::optional<Value> FactAttribute(const Fact& fact, const std::string& name,
                                   const KnowledgeBase& kb) {
  const AttributeValue* value = fact.Attribute(name);
  if (value == nullptr) return std::nullopt;
  Value out;
  if (const auto* text = std::get_if<std::string>(value)) {
    auto item = AttributeItem(*text, kb);
    if (!item) return std::nullopt;
    out.items.push_back(std::move(*item));
    return out;
  }
  out.is_list = true;
  for (const std::string& text : std::get<std::vector<std::string>>(*value)) {
    auto item = AttributeItem(text, kb);
    if (!item) return std::nullopt;
    out.items.push_back(std::move(*item));
  }
  return out;
}

std::optional<Value> StepInto(const Item& item, const std::string& name,
                              const KnowledgeBase& kb) {
  if (const auto* fact = std::get_if<const Fact*>(&item)) {
    return FactAttribute(**fact, name, kb);
  }
  const auto* filler = std::get_if<Filler>(&item);
  if (filler == nullptr) return std::nullopt;
  if (const Frame* frame = AsFrame(*filler)) {
    if (const Filler* slot = frame->Find(name)) return Value{{Item{*slot}}};
  }
  const std::string key = ConceptKey(*filler);
  if (key.empty()) return std::nullopt;
  const Fact* fact = kb.Find(key);
  if (fact == nullptr) return std::nullopt;
  return FactAttribute(*fact, name, kb);
}

std::string ItemText(const Item& item, const KnowledgeBase& kb) {
  if (const auto* fact = std::get_if<const Fact*>(&item)) return FactText(**fact);
  if (const auto* text = std::get_if<std::string>(&item)) return *text;
  const Filler& filler = std::get<Filler>(item);
  if (const auto* literal = std::get_if<Literal>(&filler)) {
    try {
      return LongDate(ParseDate(literal->text));
    } catch (const SyntaxError&) {
      return literal->text;
    }
  }
  const std::string key = ConceptKey(filler);
  if (const Fact* fact = kb.Find(key)) return FactText(*fact);
  return Dashless(key);
}

std::string ItemReferent(const Item& item) {
  if (const auto* fact = std::get_if<const Fact*>(&item)) return (*fact)->key;
  if (const auto* filler = std::get_if<Filler>(&item)) {
    if (std::holds_alternative<InstanceRef>(*filler) || AsFrame(*filler)) {
      return ConceptKey(*filler);
    }
  }
  return {};
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t at = text.find(sep, start);
    parts.push_back(text.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return parts;
}

std::optional<std::string> ApplyFilter(const std::string& filter,
                                       const Value& value, std::string text,
                                       Date today) {
  if (filter == "cap") {
    if (!text.empty()) {
      text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    }
    return text;
  }
  if (filter == "lower") {
    for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return text;
  }
  if (filter == "relative") {
    if (value.is_list || value.items.size() != 1) return std::nullopt;
    const auto* filler = std::get_if<Filler>(&value.items.front());
    const auto* literal = filler ? std::get_if<Literal>(filler) : nullptr;
    if (literal == nullptr) return std::nullopt;
    try {
      const Date date = ParseDate(literal->text);
      if (date == today) return std::string("today");
      if (date == AddDays(today, 1)) return std::string("tomorrow");
      if (date == AddDays(today, -1)) return std::string("yesterday");
      return "on " + LongDate(date);
    } catch (const SyntaxError&) {
      return std::nullopt;
    }
  }
  throw ContractError("unknown template filter '" + filter + "'");
}

class GapEvaluator {
 public:
  GapEvaluator(const TemplateScope& scope, const KnowledgeBase& kb, Date today)
      : scope_(scope), kb_(kb), today_(today) {}

  std::optional<Value> Evaluate(const std::string& path) const {
    const std::vector<std::string> steps = Split(path, '.');
    std::optional<Value> value = Root(steps.front());
    for (size_t i = 1; i < steps.size() && value; ++i) {
      if (value->is_list || value->items.size() != 1) return std::nullopt;
      value = StepInto(value->items.front(), steps[i], kb_);
    }
    return value;
  }

  // Text for "{path|filter|...}".
  std::optional<std::string> Text(const std::string& expression) const {
    const std::vector<std::string> parts = Split(expression, '|');
    const std::optional<Value> value = Evaluate(parts.front());
    if (!value) return std::nullopt;
    std::string text;
    for (const Item& item : value->items) {
      if (!text.empty()) text += ", ";
      text += ItemText(item, kb_);
    }
    for (size_t i = 1; i < parts.size(); ++i) {
      auto filtered = ApplyFilter(parts[i], *value, text, today_);
      if (!filtered) return std::nullopt;
      text = std::move(*filtered);
    }
    return text;
  }

  std::optional<std::string> Fill(const std::string& pattern) const {
    std::string out;
    size_t pos = 0;
    while (pos < pattern.size()) {
      const size_t open = pattern.find('{', pos);
      if (open == std::string::npos) {
        out += pattern.substr(pos);
        break;
      }
      const size_t close = pattern.find('}', open);
      if (close == std::string::npos) {
        throw ContractError("unterminated gap in template text '" + pattern + "'");
      }
      out += pattern.substr(pos, open - pos);
      auto text = Text(pattern.substr(open + 1, close - open - 1));
      if (!text) return std::nullopt;
      out += *text;
      pos = close + 1;
    }
    return out;
  }

  std::optional<std::vector<DisplayItem>> Items(const std::string& pattern) const {
    if (pattern.size() > 2 && pattern.front() == '{' && pattern.back() == '}' &&
        pattern.find('{', 1) == std::string::npos &&
        pattern.find('|') == std::string::npos) {
      const std::optional<Value> value =
          Evaluate(pattern.substr(1, pattern.size() - 2));
      if (!value) return std::nullopt;
      std::vector<DisplayItem> items;
      for (const Item& item : value->items) {
        items.push_back({ItemText(item, kb_), ItemReferent(item)});
      }
      return items;
    }
    auto text = Fill(pattern);
    if (!text) return std::nullopt;
    return std::vector<DisplayItem>{{*text, ""}};
  }

 private:
  std::optional<Value> Root(const std::string& name) const {
    if (const auto it = scope_.text.find(name); it != scope_.text.end()) {
      return Value{{Item{it->second}}};
    }
    if (const auto it = scope_.lists.find(name); it != scope_.lists.end()) {
      Value value;
      value.is_list = true;
      for (const std::string& text : it->second) value.items.push_back(text);
      return value;
    }
    if (const auto it = scope_.roots.find(name); it != scope_.roots.end()) {
      return Value{{Item{it->second}}};
    }
    if (scope_.frame != nullptr) {
      if (const Filler* slot = scope_.frame->Find(name)) return Value{{Item{*slot}}};
    }
    return std::nullopt;
  }

  const TemplateScope& scope_;
  const KnowledgeBase& kb_;
  Date today_;
};

// ---------------------------------------------------------------------------
// Deictic grounding

class Grounder {
 public:
  explicit Grounder(const DialogueState& state) : state_(state) {}

  DeicticResult Run(const Frame& frame) {
    DeicticResult result;
    result.frame = GroundFrame(frame);
    result.status = status_;
    result.expression = expression_;
    return result;
  }

 private:
  Frame GroundFrame(const Frame& frame) {
    Frame out(frame.type, frame.counter);
    for (const Slot& slot : frame.slots) {
      out.slots.push_back({slot.role, Ground(slot.filler)});
    }
    return out;
  }

  Filler Ground(const Filler& filler) {
    if (const auto* ref = std::get_if<InstanceRef>(&filler)) {
      return GroundRef(*ref, filler);
    }
    if (const Frame* frame = AsFrame(filler)) {
      if (frame->type == "ordinal-ref") return GroundOrdinal(*frame, filler);
      return FrameBox(GroundFrame(*frame));
    }
    return filler;
  }

  Filler GroundRef(const InstanceRef& ref, const Filler& original) {
    if (ref.type == "today") return Literal{IsoDate(state_.date)};
    if (ref.type == "tomorrow") return Literal{IsoDate(AddDays(state_.date, 1))};
    if (ref.type == "yesterday") return Literal{IsoDate(AddDays(state_.date, -1))};
    if (ref.type != "this" && ref.type != "that" && ref.type != "here") {
      return original;
    }
    for (const DeicticCenter& center : state_.centers) {
      if (ref.type == "here" && center.source != CenterSource::kLocation) {
        continue;
      }
      return center.referent;
    }
    return Unresolved(ref.type, original);
  }

  Filler GroundOrdinal(const Frame& frame, const Filler& original) {
    const Filler* ordinal = frame.Find("ordinal");
    const auto* literal = ordinal ? std::get_if<Literal>(ordinal) : nullptr;
    size_t index = 0;
    try {
      if (literal == nullptr) throw std::invalid_argument("no ordinal");
      index = std::stoul(literal->text);
    } catch (const std::exception&) {
      return Unresolved("ordinal", original);
    }
    const std::vector<DisplayItem>& items = state_.display.items;
    if (index == 0 || index > items.size()) {
      if (status_ == DeicticResult::Status::kGrounded) {
        status_ = DeicticResult::Status::kOutOfRange;
        expression_ = literal->text;
      }
      return original;
    }
    const DisplayItem& item = items[index - 1];
    if (item.referent.empty()) return Literal{item.text};
    return InstanceRef{item.referent, 0};
  }

  Filler Unresolved(const std::string& expression, const Filler& original) {
    if (status_ == DeicticResult::Status::kGrounded) {
      status_ = DeicticResult::Status::kUnresolved;
      expression_ = expression;
    }
    Frame marker("unresolved");
    marker.slots.push_back({"expression", original});
    return FrameBox(std::move(marker));
  }

  const DialogueState& state_;
  DeicticResult::Status status_ = DeicticResult::Status::kGrounded;
  std::string expression_;
};

// ---------------------------------------------------------------------------

void SortCenters(std::vector<DeicticCenter>& centers) {
  std::stable_sort(centers.begin(), centers.end(), CenterBefore);
}

void ReplaceDisplayed(DialogueState& state) {
  std::erase_if(state.centers, [](const DeicticCenter& c) {
    return c.source == CenterSource::kDisplayed;
  });
  const uint64_t stamp = ++state.clock;
  for (size_t i = 0; i < state.display.items.size(); ++i) {
    const DisplayItem& item = state.display.items[i];
    if (item.referent.empty()) continue;
    state.centers.push_back({InstanceRef{item.referent, 0},
                             CenterSource::kDisplayed, stamp, i});
  }
  SortCenters(state.centers);
}

void AddMentioned(DialogueState& state, const Frame& frame) {
  std::vector<std::string> keys;
  const Filler* situation = frame.Find("situation");
  VisitFillers(frame, [&](const Filler& filler) {
    const auto* ref = std::get_if<InstanceRef>(&filler);
    if (ref == nullptr || &filler == situation) return;
    if (ref->type == "i" || ref->type == "speaker") return;
    if (std::find(keys.begin(), keys.end(), ref->type) == keys.end()) {
      keys.push_back(ref->type);
    }
  });
  if (keys.empty()) return;
  const uint64_t stamp = ++state.clock;
  for (size_t i = 0; i < keys.size(); ++i) {
    std::erase_if(state.centers, [&](const DeicticCenter& c) {
      return c.source == CenterSource::kMentioned && ConceptKey(c.referent) == keys[i];
    });
    state.centers.push_back(
        {InstanceRef{keys[i], 0}, CenterSource::kMentioned, stamp, i});
  }
  SortCenters(state.centers);
}

const KnowledgeBase& ActiveKnowledge(const DialogueState& state) {
  return state.context->assets->Knowledge(state.context->entry.knowledge_base_id);
}

const TemplateSet* ActiveTemplates(const DialogueState& state) {
  if (!state.context) return nullptr;
  return &state.context->assets->Templates(state.context->entry.templates_id);
}

TemplateScope BaseScope(const DialogueState& state) {
  TemplateScope scope;
  scope.roots["date"] = Literal{IsoDate(state.date)};
  if (state.context) {
    scope.roots["this"] = InstanceRef{state.context->entry.subject, 0};
    scope.text["situation"] = state.context->entry.label;
  }
  return scope;
}

// Speaks a system template over the current screen.
TurnOutput SystemTurn(DialogueState state, std::string_view name,
                      TurnStatus status, const TemplateScope& extra = {}) {
  const ResponseTemplate tmpl = SystemTemplate(ActiveTemplates(state), name);
  TemplateScope scope = BaseScope(state);
  for (const auto& [k, v] : extra.text) scope.text[k] = v;
  for (const auto& [k, v] : extra.roots) scope.roots[k] = v;
  for (const auto& [k, v] : extra.lists) scope.lists[k] = v;
  static const KnowledgeBase kEmpty;
  const KnowledgeBase& kb = state.context ? ActiveKnowledge(state) : kEmpty;
  std::optional<Rendered> rendered = RenderTemplate(tmpl, scope, kb, state.date);
  TurnOutput out;
  out.status = status;
  out.template_name = tmpl.name;
  if (!rendered) {
    // System templates should never miss; fall back to their bare default.
    out.spoken = DefaultSpoken().at("apology");
  } else {
    out.spoken = rendered->spoken;
    if (rendered->display) {
      state.display = *rendered->display;
      ReplaceDisplayed(state);
    }
  }
  state.last_system_utterance = out.spoken;
  out.display = state.display;
  out.state = std::move(state);
  return out;
}

TurnOutput Clarify(DialogueState state, std::string_view name,
                   Clarification clarification, const TemplateScope& scope) {
  clarification.kind = std::string(name);
  state.pending_clarification = std::move(clarification);
  return SystemTurn(std::move(state), name, TurnStatus::kClarification, scope);
}

TurnOutput AskWhichReading(DialogueState state,
                           const semantics::Disambiguation& result) {
  const std::vector<const semantics::Candidate*> tied = result.Tied();
  const KnowledgeBase& kb = ActiveKnowledge(state);
  Clarification clarification;
  const semantics::Candidate& best = *tied.front();
  for (size_t g = 0; g < best.bindings.size() && clarification.options.empty(); ++g) {
    const bool differs = std::any_of(tied.begin() + 1, tied.end(), [&](const auto* c) {
      return g < c->bindings.size() && c->bindings[g].gap == best.bindings[g].gap &&
             !(c->bindings[g].value == best.bindings[g].value);
    });
    if (!differs) continue;
    clarification.surface = best.bindings[g].surface;
    for (const semantics::Candidate* c : tied) {
      if (g >= c->bindings.size() || c->bindings[g].gap != best.bindings[g].gap) continue;
      const std::string label = ItemText(Item{c->bindings[g].value}, kb);
      if (std::find(clarification.options.begin(), clarification.options.end(),
                    label) == clarification.options.end()) {
        clarification.options.push_back(label);
      }
    }
  }
  if (clarification.options.empty()) {
    clarification.surface = "request";
    for (const semantics::Candidate* c : tied) {
      clarification.options.push_back(Dashless(c->frame.type));
    }
  }
  TemplateScope scope;
  scope.text["surface"] = clarification.surface;
  std::string joined;
  for (const std::string& option : clarification.options) {
    joined += (joined.empty() ? "" : " or ") + option;
  }
  scope.text["options"] = joined;
  scope.lists["choices"] = clarification.options;
  return Clarify(std::move(state), "ambiguous", std::move(clarification), scope);
}

TurnOutput HandleUtterance(DialogueState state, const std::string& text) {
  if (!state.context) throw ContractError("dialogue state has no situation");
  state.pending_clarification.reset();
  ++state.clock;

  recognizer::NBestList nbest;
  try {
    nbest = recognizer::Recognize(text, recognizer::ActivateDictionary(*state.context),
                                  state.nbest);
  } catch (const EmptyInputError&) {
    return SystemTurn(std::move(state), "prompt-again", TurnStatus::kPromptAgain);
  }

  const AssetStore& assets = *state.context->assets;
  const SituationEntry& entry = state.context->entry;
  const semantics::Grammar& grammar = assets.Grammar(entry.grammar_id);
  const KnowledgeBase& kb = assets.Knowledge(entry.knowledge_base_id);
  const plans::PlanLibrary& library = plans::LoadPlanLibrary(*state.context);

  const std::vector<semantics::Candidate> candidates = semantics::Parse(nbest, grammar);
  semantics::PreferenceContext context{[&kb](std::string_view key) { return kb.Knows(key); }};
  const semantics::Disambiguation result =
      semantics::Disambiguate(candidates, semantics::GrammarPreferences(grammar), context);

  switch (result.status) {
    case semantics::Disambiguation::Status::kNoParse:
      return Clarify(std::move(state), "no-parse", {}, {});
    case semantics::Disambiguation::Status::kAmbiguous:
      return AskWhichReading(std::move(state), result);
    case semantics::Disambiguation::Status::kChosen:
      break;
  }

  Frame frame = result.best().frame;
  NumberFresh(frame, state.counter);
  frame = semantics::AttachSituation(std::move(frame), entry, state.counter);

  const DeicticResult grounded = ResolveDeictics(frame, state);
  if (grounded.status == DeicticResult::Status::kOutOfRange) {
    TemplateScope scope;
    scope.text["expression"] = grounded.expression;
    return Clarify(std::move(state), "out-of-range", {"", grounded.expression, {}}, scope);
  }
  if (grounded.status == DeicticResult::Status::kUnresolved) {
    TemplateScope scope;
    scope.text["expression"] = grounded.expression;
    return Clarify(std::move(state), "unresolved", {"", grounded.expression, {}}, scope);
  }

  state.frame_history.push_back(grounded.frame);
  AddMentioned(state, grounded.frame);

  std::vector<plans::Intention> intentions =
      plans::RecognizeIntention(grounded.frame, library, state.beliefs);
  if (intentions.empty()) return Clarify(std::move(state), "no-intention", {}, {});

  plans::Intention chosen = std::move(intentions.front());
  NumberFresh(chosen.frame, state.counter);
  state.beliefs = plans::UpdateBeliefs(std::move(state.beliefs), chosen,
                                       grounded.frame, kb.frames());
  const TemplateSet& templates = assets.Templates(entry.templates_id);
  return GenerateResponse(chosen, kb, templates, std::move(state));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view CenterSourceName(CenterSource source) {
  switch (source) {
    case CenterSource::kObject: return "object";
    case CenterSource::kDisplayed: return "displayed";
    case CenterSource::kMentioned: return "mentioned";
    case CenterSource::kLocation: return "location";
  }
  return "?";
}

bool CenterBefore(const DeicticCenter& a, const DeicticCenter& b) {
  if (a.source != b.source) return a.source < b.source;
  if (a.recency != b.recency) return a.recency > b.recency;
  return a.position < b.position;
}

std::vector<std::string> DisplayMessage::Lines() const {
  std::vector<std::string> lines{title};
  for (size_t i = 0; i < items.size(); ++i) {
    lines.push_back(std::to_string(i + 1) + ". " + items[i].text);
  }
  return lines;
}

std::vector<std::string> DisplayMessage::ItemTexts() const {
  std::vector<std::string> texts;
  for (const DisplayItem& item : items) texts.push_back(item.text);
  return texts;
}

std::string_view TurnStatusName(TurnStatus status) {
  switch (status) {
    case TurnStatus::kGreeting: return "greeting";
    case TurnStatus::kAnswer: return "answer";
    case TurnStatus::kClarification: return "clarification";
    case TurnStatus::kPromptAgain: return "prompt_again";
    case TurnStatus::kApology: return "apology";
    case TurnStatus::kFallback: return "fallback";
    case TurnStatus::kNoOp: return "no_op";
    case TurnStatus::kUnknownCode: return "unknown_code";
  }
  return "?";
}

DialogueState InitialState(std::shared_ptr<const World> world,
                           std::optional<Date> date) {
  DialogueState state;
  state.date = date.value_or(world->date());
  const SituationEvent start{EventKind::kEnter, world->start(), 0};
  state.context = ApplyEvent(*world, start, std::nullopt);
  state.world = std::move(world);
  return state;
}

DeicticResult ResolveDeictics(const Frame& frame, const DialogueState& state) {
  return Grounder(state).Run(frame);
}

std::optional<Rendered> RenderTemplate(const ResponseTemplate& tmpl,
                                       const TemplateScope& scope,
                                       const KnowledgeBase& kb, Date today) {
  const GapEvaluator evaluator(scope, kb, today);
  Rendered rendered;
  auto spoken = evaluator.Fill(tmpl.spoken);
  if (!spoken) return std::nullopt;
  rendered.spoken = std::move(*spoken);
  if (tmpl.display) {
    DisplayMessage display;
    auto title = evaluator.Fill(tmpl.display->title);
    if (!title) return std::nullopt;
    display.title = std::move(*title);
    for (const std::string& item : tmpl.display->items) {
      auto items = evaluator.Items(item);
      if (!items) return std::nullopt;
      display.items.insert(display.items.end(), items->begin(), items->end());
    }
    rendered.display = std::move(display);
  }
  return rendered;
}

TurnOutput GenerateResponse(const plans::Intention& intention,
                            const KnowledgeBase& kb,
                            const TemplateSet& templates, DialogueState state) {
  const Frame& frame = intention.frame;
  const ResponseTemplate* tmpl = nullptr;
  if (const Filler* theme = frame.Find("theme")) {
    const std::string theme_type = ConceptKey(*theme);
    if (!theme_type.empty()) tmpl = templates.Find(frame.type + "/" + theme_type);
  }
  if (tmpl == nullptr) tmpl = templates.Find(frame.type);
  if (tmpl == nullptr) {
    return SystemTurn(std::move(state), "fallback", TurnStatus::kFallback);
  }

  TemplateScope scope = BaseScope(state);
  scope.frame = &frame;
  std::optional<Rendered> rendered = RenderTemplate(*tmpl, scope, kb, state.date);
  if (!rendered) {
    return SystemTurn(std::move(state), "apology", TurnStatus::kApology);
  }

  TurnOutput out;
  out.status = TurnStatus::kAnswer;
  out.template_name = tmpl->name;
  out.spoken = std::move(rendered->spoken);
  if (rendered->display) {
    state.display = std::move(*rendered->display);
    ReplaceDisplayed(state);
  }
  state.last_system_utterance = out.spoken;
  out.display = state.display;
  out.state = std::move(state);
  return out;
}

TurnOutput OnSituationEnter(DialogueState state, const ContextSwitch& context) {
  const bool no_op = context.no_op && state.entered;
  state.context = context;
  state.entered = true;
  ++state.clock;
  if (no_op) {
    return SystemTurn(std::move(state), "already-here", TurnStatus::kNoOp);
  }

  state.pending_clarification.reset();
  state.centers.clear();
  const CenterSource source = context.kind == EventKind::kLookAt
                                  ? CenterSource::kObject
                                  : CenterSource::kLocation;
  state.centers.push_back(
      {InstanceRef{context.entry.subject, 0}, source, state.clock, 0});
  state.display = DisplayMessage{context.entry.label, {}};

  const TemplateSet& templates = context.assets->Templates(context.entry.templates_id);
  const KnowledgeBase& kb = context.assets->Knowledge(context.entry.knowledge_base_id);
  const ResponseTemplate* greeting = templates.Find(context.entry.greeting);
  std::optional<Rendered> rendered;
  if (greeting != nullptr) {
    rendered = RenderTemplate(*greeting, BaseScope(state), kb, state.date);
  }
  if (!rendered) {
    ReplaceDisplayed(state);
    return SystemTurn(std::move(state), "apology", TurnStatus::kApology);
  }

  TurnOutput out;
  out.status = TurnStatus::kGreeting;
  out.template_name = greeting->name;
  out.spoken = std::move(rendered->spoken);
  if (rendered->display) state.display = std::move(*rendered->display);
  ReplaceDisplayed(state);
  state.last_system_utterance = out.spoken;
  out.display = state.display;
  out.state = std::move(state);
  return out;
}

TurnOutput Step(DialogueState state, const TurnInput& input) {
  if (!state.world) throw ContractError("dialogue state has no world");
  if (const auto* utterance = std::get_if<Utterance>(&input)) {
    return HandleUtterance(std::move(state), utterance->text);
  }
  const SituationEvent& event = std::get<SituationEvent>(input);
  std::optional<ObjectId> active;
  if (state.entered && state.context) active = state.context->entry.id;
  const std::optional<ContextSwitch> context = ApplyEvent(*state.world, event, active);
  if (!context) {
    ++state.clock;
    return SystemTurn(std::move(state), "no-code", TurnStatus::kUnknownCode);
  }
  return OnSituationEnter(std::move(state), *context);
}

}  // namespace situ::dialogue
