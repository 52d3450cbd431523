#include "guidyn/env/generator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string_view>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/parallel.hpp"
#include "guidyn/common/rng.hpp"
#include "guidyn/env/render.hpp"

namespace guidyn {

namespace {

using Vocabulary = std::vector<std::string>;

const Vocabulary kTitles = {
    "Home",         "Search results", "Product detail", "Shopping cart", "Checkout",
    "Order confirmation", "My profile", "Settings",     "Sign in",       "Messages",
    "Coupons",      "Store locator",  "Article",        "Video player",  "Booking",
    "Payment",      "Reviews",        "Favorites",      "Notifications", "Help center"};

const Vocabulary kTextVocabulary = {
    "Free shipping on all orders", "Today's best deals",  "Limited time offer",
    "New arrivals this week",      "Your order is on the way", "Member exclusive price",
    "Top rated by customers",      "Recommended for you", "Fresh from the farm",
    "Handmade with care",          "Flash sale ends soon", "Popular in your city"};

const Vocabulary kButtonVocabulary = {
    "Submit",   "Buy now",      "Add to cart", "Confirm",   "Next",      "Back",
    "Cancel",   "Share",        "Follow",      "Apply coupon", "Save",   "View details",
    "Load more", "Sign in",     "Check out",   "Contact seller"};

const Vocabulary kInputVocabulary = {"Search products", "Enter your name", "Phone number",
                                     "Delivery address", "Leave a message", "Promo code",
                                     "Email address",    "Search stores"};

const Vocabulary kListVocabulary = {"Order history",  "Nearby stores",  "Product list",
                                    "Comment thread", "Favorite items", "Recent searches",
                                    "Coupon wallet",  "Message inbox"};

const Vocabulary kImageVocabulary = {"Banner image",  "Product photo",      "Store front",
                                     "Profile avatar", "Promotional poster", "Map preview"};

const Vocabulary kTabVocabulary = {"Home", "Discover", "Cart", "Me", "Orders", "Messages"};

constexpr int kMargin = 16;
constexpr int kGap = 8;
constexpr int kHeaderHeight = 48;
constexpr int kTabBarHeight = 48;

// Node skeleton shared by every instance of a template; instances only vary text.
struct NodeSkeleton {
  std::string tag;
  std::string xpath;
  Rect bounds;
  EventSet events;
  const Vocabulary* vocabulary = nullptr;  // null: fixed text
  std::string fixed_text;
};

struct Template {
  std::string template_id;
  std::string title;
  std::vector<NodeSkeleton> nodes;
};

const Vocabulary& vocabulary_for(std::string_view tag) {
  if (tag == "button") return kButtonVocabulary;
  if (tag == "input") return kInputVocabulary;
  if (tag == "list") return kListVocabulary;
  if (tag == "image") return kImageVocabulary;
  if (tag == "tab") return kTabVocabulary;
  return kTextVocabulary;
}

Template make_template(const std::string& app_id, int index, ScreenDims dims, Rng& rng) {
  Template t;
  t.template_id = fmt::format("{}-t{:02}", app_id, index);
  t.title = kTitles[static_cast<std::size_t>(index) % kTitles.size()];
  if (index >= static_cast<int>(kTitles.size())) t.title = rng.pick(kTitles);

  const std::string root = fmt::format("/page[@tpl='{}']", t.template_id);
  t.nodes.push_back({"page", root, {0, 0, dims.width, dims.height}, {}, nullptr, ""});
  t.nodes.push_back({"header", root + "/header", {0, 0, dims.width, kHeaderHeight}, {}, nullptr,
                     t.title});

  const bool tab_bar = rng.chance(0.6);
  const int body_bottom = dims.height - (tab_bar ? kTabBarHeight + kGap : kGap);
  const int max_rows = rng.between(5, 9);
  std::map<std::string, int> per_tag;
  auto xpath_for = [&](const std::string& tag) {
    return fmt::format("{}/body/{}[{}]", root, tag, ++per_tag[tag]);
  };
  auto add = [&](const std::string& tag, Rect r, EventSet ev) {
    t.nodes.push_back({tag, xpath_for(tag), r, ev, &vocabulary_for(tag), ""});
  };
  const EventSet clickable = EventSet().with(EventKind::kClickable);

  int y = kHeaderHeight + kGap;
  const int full_w = dims.width - 2 * kMargin;
  for (int row = 0; row < max_rows; ++row) {
    const std::uint64_t roll = rng.below(100);
    int h = 0;
    if (roll < 25) {
      h = 32;
      if (y + h > body_bottom) break;
      add("text", {kMargin, y, full_w, h}, {});
    } else if (roll < 45) {
      h = 40;
      if (y + h > body_bottom) break;
      const int half = (full_w - kGap) / 2;
      add("button", {kMargin, y, half, h}, clickable);
      add("button", {kMargin + half + kGap, y, half, h}, clickable);
    } else if (roll < 60) {
      h = 40;
      if (y + h > body_bottom) break;
      add("button", {kMargin, y, full_w, h}, clickable);
    } else if (roll < 75) {
      h = 40;
      if (y + h > body_bottom) break;
      add("input", {kMargin, y, full_w, h}, EventSet().with(EventKind::kEditable));
    } else if (roll < 90) {
      h = rng.between(96, 160);
      if (y + h > body_bottom) break;
      EventSet ev = EventSet().with(EventKind::kScrollable);
      if (rng.chance(0.3)) ev = ev.with(EventKind::kClickable);
      add("list", {kMargin, y, full_w, h}, ev);
    } else {
      h = rng.between(80, 120);
      if (y + h > body_bottom) break;
      add("image", {kMargin, y, full_w, h}, rng.chance(0.3) ? clickable : EventSet());
    }
    y += h + kGap;
  }

  const bool has_interactive = std::any_of(t.nodes.begin(), t.nodes.end(),
                                           [](const NodeSkeleton& n) { return !n.events.empty(); });
  if (tab_bar || !has_interactive) {
    const int tabs = rng.between(2, 4);
    const int w = dims.width / tabs;
    for (int i = 0; i < tabs; ++i) {
      const int x = i * w;
      const int tw = (i == tabs - 1) ? dims.width - x : w;
      t.nodes.push_back({"tab", fmt::format("{}/tabbar/tab[{}]", root, i + 1),
                         {x, dims.height - kTabBarHeight, tw, kTabBarHeight}, clickable,
                         &kTabVocabulary, ""});
    }
  }
  return t;
}

std::vector<AxNode> instantiate(const Template& t, Rng& rng) {
  std::vector<AxNode> tree;
  tree.reserve(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const NodeSkeleton& s = t.nodes[i];
    AxNode n;
    n.node_id = fmt::format("n{}", i);
    n.tag = s.tag;
    n.xpath = s.xpath;
    n.text = s.vocabulary ? rng.pick(*s.vocabulary) : s.fixed_text;
    n.bounds = s.bounds;
    n.events = s.events;
    tree.push_back(std::move(n));
  }
  return tree;
}

// Affordance paired with the node it acts on, in enumerate_affordances order.
std::vector<std::pair<Action, std::string>> targeted_affordances(const UiState& state) {
  std::vector<std::pair<Action, std::string>> out;
  const std::vector<Action> actions = enumerate_affordances(state);
  std::size_t k = 0;
  for (const auto& node : state.tree) {
    int count = 0;
    if (node.events.has(EventKind::kClickable)) count += 1;
    if (node.events.has(EventKind::kEditable)) count += 1;
    if (node.events.has(EventKind::kScrollable)) count += 4;
    for (int i = 0; i < count; ++i) out.emplace_back(actions[k++], node.node_id);
  }
  return out;
}

}  // namespace

void validate(const GenerationSpec& spec) {
  if (spec.n_apps < 1) throw ConfigError("n_apps must be >= 1");
  if (spec.states_per_app < 1) throw ConfigError("states_per_app must be positive");
  if (spec.templates_per_app < 1) throw ConfigError("templates_per_app must be positive");
  if (spec.states_per_app < 2) throw ConfigError("states_per_app must be >= 2");
  if (!(spec.fault_rate >= 0.0 && spec.fault_rate <= 0.5)) {
    throw ConfigError("fault_rate must lie in [0, 0.5]");
  }
  if (!(spec.edge_density >= 0.0 && spec.edge_density <= 1.0)) {
    throw ConfigError("edge_density must lie in [0, 1]");
  }
  if (!(spec.terminal_fraction >= 0.0 && spec.terminal_fraction < 1.0)) {
    throw ConfigError("terminal_fraction must lie in [0, 1)");
  }
  if (spec.dims.width < 64 || spec.dims.height < 192) {
    throw ConfigError("screen must be at least 64x192 pixels");
  }
}

std::string app_id_for(int app_index) { return fmt::format("app-{:03}", app_index); }

std::vector<std::string> salient_texts(const std::vector<AxNode>& tree, std::size_t limit) {
  std::vector<std::size_t> order;
  for (std::size_t i = 1; i < tree.size(); ++i) {
    if (!tree[i].text.empty()) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tree[a].bounds.area() > tree[b].bounds.area();
  });
  std::vector<std::string> out;
  for (std::size_t i : order) {
    if (out.size() >= limit) break;
    out.push_back(tree[i].text);
  }
  return out;
}

std::string describe_state(const std::string& title, const std::vector<AxNode>& tree) {
  std::vector<std::string> texts;
  for (const auto& t : salient_texts(tree, tree.size())) {
    if (t == title || std::find(texts.begin(), texts.end(), t) != texts.end()) continue;
    texts.push_back(t);
    if (texts.size() == 3) break;
  }
  std::string out = title + " screen";
  if (texts.empty()) return out;
  out += " showing ";
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i > 0) out += (i + 1 == texts.size()) ? " and " : ", ";
    out += '"' + texts[i] + '"';
  }
  return out;
}

EnvGraph generate_app(std::uint64_t seed, const GenerationSpec& spec, int app_index) {
  validate(spec);
  const std::string app_id = app_id_for(app_index);
  const std::uint64_t app_seed = derive_seed(seed, static_cast<std::uint64_t>(app_index));

  Rng template_rng(derive_seed(app_seed, 1));
  std::vector<Template> templates;
  for (int j = 0; j < spec.templates_per_app; ++j) {
    templates.push_back(make_template(app_id, j, spec.dims, template_rng));
  }

  Rng state_rng(derive_seed(app_seed, 2));
  std::vector<UiState> states;
  const auto n = static_cast<std::size_t>(spec.states_per_app);
  const auto n_templates = static_cast<std::size_t>(spec.templates_per_app);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ti = i < n_templates ? i : state_rng.below(n_templates);
    const Template& t = templates[ti];
    UiState s;
    s.state_id = fmt::format("s{:04}", i);
    s.template_id = t.template_id;
    s.tree = instantiate(t, state_rng);
    s.semantic_label = describe_state(t.title, s.tree);
    s.raster = render(s.template_id, s.tree, spec.dims);
    states.push_back(std::move(s));
  }

  Rng edge_rng(derive_seed(app_seed, 3));
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i < n; ++i) candidates.push_back(i);
  edge_rng.shuffle(candidates);
  const auto n_terminals = static_cast<std::size_t>(
      std::floor(spec.terminal_fraction * static_cast<double>(n - 1)));
  std::vector<std::size_t> terminals(candidates.begin(),
                                     candidates.begin() + static_cast<std::ptrdiff_t>(n_terminals));
  std::sort(terminals.begin(), terminals.end());

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::binary_search(terminals.begin(), terminals.end(), i)) continue;
    const auto affordances = targeted_affordances(states[i]);
    for (std::size_t k = 0; k < affordances.size(); ++k) {
      std::size_t to = 0;
      if (k == 0) {
        to = (i + 1) % n;  // ring keeps every state reachable from the entry
      } else if (edge_rng.chance(spec.edge_density)) {
        to = edge_rng.below(n - 1);
        if (to >= i) ++to;
      } else {
        continue;
      }
      edges.push_back({i, to, affordances[k].second, affordances[k].first, EdgeFlag::kValid});
    }
  }

  Rng fault_rng(derive_seed(app_seed, 4));
  std::vector<std::size_t> order(edges.size());
  for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
  fault_rng.shuffle(order);
  const auto n_faults =
      static_cast<std::size_t>(std::llround(spec.fault_rate * static_cast<double>(edges.size())));
  for (std::size_t k = 0; k < n_faults; ++k) {
    edges[order[k]].flag = (k % 2 == 0) ? EdgeFlag::kSystemError : EdgeFlag::kRenderArtifact;
  }

  return EnvGraph(app_id, spec.dims, std::move(states), std::move(edges), 0, std::move(terminals));
}

std::vector<EnvGraph> generate_environment(std::uint64_t seed, const GenerationSpec& spec,
                                           std::size_t workers) {
  validate(spec);
  std::vector<std::optional<EnvGraph>> slots(static_cast<std::size_t>(spec.n_apps));
  parallel_for(slots.size(), workers, [&](std::size_t i) {
    slots[i].emplace(generate_app(seed, spec, static_cast<int>(i)));
  });
  std::vector<EnvGraph> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace guidyn
