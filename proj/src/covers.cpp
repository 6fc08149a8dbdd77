#include "gerbekit/covers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace gerbekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Intervals = std::vector<std::pair<double, double>>;

Intervals arc_intervals(const Arc& a) {
    double lo = a.center - a.half_width, hi = a.center + a.half_width;
    if (hi - lo >= kTwoPi) return {{0.0, kTwoPi}};
    double shift = std::floor(lo / kTwoPi) * kTwoPi;
    lo -= shift;
    hi -= shift;
    if (hi <= kTwoPi) return {{lo, hi}};
    return {{lo, kTwoPi}, {0.0, hi - kTwoPi}};
}

Intervals intersect(const Intervals& a, const Intervals& b) {
    Intervals out;
    for (const auto& [l1, h1] : a)
        for (const auto& [l2, h2] : b) {
            double l = std::max(l1, l2), h = std::min(h1, h2);
            if (h > l) out.emplace_back(l, h);
        }
    return out;
}

int sort_decreasing_sign(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
            if (v[j] < v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                sign = -sign;
            }
    return sign;
}

struct UniformFactor {
    int N;
    double h, ov, first_center;
};

UniformFactor uniform_factor(const std::vector<Arc>& arcs) {
    UniformFactor u;
    u.N = int(arcs.size());
    u.h = kTwoPi / u.N;
    u.first_center = arcs[0].center;
    u.ov = arcs[0].half_width - u.h / 2;
    for (int j = 0; j < u.N; ++j) {
        if (std::abs(arcs[j].center - (u.first_center + u.h * j)) > 1e-12 ||
            std::abs(arcs[j].half_width - arcs[0].half_width) > 1e-12)
            throw std::invalid_argument("refine: cover factor is not uniformly spaced");
    }
    return u;
}

}  // namespace

bool arc_contains_interval(const Arc& arc, double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    double k0 = std::round((arc.center - mid) / kTwoPi);
    for (double k = k0 - 1; k <= k0 + 1; k += 1.0) {
        double l = lo + k * kTwoPi, h = hi + k * kTwoPi;
        if (arc.center - arc.half_width < l && h < arc.center + arc.half_width) return true;
    }
    return false;
}

Cover::Cover(std::vector<std::vector<Arc>> factors, std::string id) : factors_(std::move(factors)), id_(std::move(id)) {
    if (factors_.empty()) throw std::invalid_argument("cover needs at least one circle factor");
    for (const auto& f : factors_) {
        if (f.empty()) throw std::invalid_argument("empty cover factor");
        size_ *= int(f.size());
    }
}

std::vector<int> Cover::box_index(int piece) const {
    if (piece < 0 || piece >= size_) throw std::out_of_range("cover piece index out of range");
    std::vector<int> box(factors_.size());
    for (int f = int(factors_.size()) - 1; f >= 0; --f) {
        int n = int(factors_[f].size());
        box[f] = piece % n;
        piece /= n;
    }
    return box;
}

int Cover::piece_index(const std::vector<int>& box) const {
    if (box.size() != factors_.size()) throw std::invalid_argument("box index has wrong length");
    int idx = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        int n = int(factors_[f].size());
        if (box[f] < 0 || box[f] >= n) throw std::out_of_range("box index out of range");
        idx = idx * n + box[f];
    }
    return idx;
}

bool Cover::intersects(const std::vector<int>& pieces) const {
    if (pieces.empty()) return true;
    std::vector<std::vector<int>> boxes;
    for (int p : pieces) boxes.push_back(box_index(p));
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        Intervals cur = arc_intervals(factors_[f][boxes[0][f]]);
        for (std::size_t i = 1; i < boxes.size() && !cur.empty(); ++i)
            cur = intersect(cur, arc_intervals(factors_[f][boxes[i][f]]));
        if (cur.empty()) return false;
    }
    return true;
}

bool Cover::contains_point(int piece, const std::vector<double>& x) const {
    if (int(x.size()) != num_factors()) throw std::invalid_argument("point dimension mismatch");
    auto box = box_index(piece);
    for (std::size_t f = 0; f < factors_.size(); ++f)
        if (!arc_contains_interval(factors_[f][box[f]], x[f], x[f])) return false;
    return true;
}

const std::vector<std::vector<int>>& Cover::nerve(int len, bool ordered) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(len, ordered);
    auto it = nerve_cache_.find(key);
    if (it != nerve_cache_.end()) return it->second;

    const int F = num_factors();
    std::vector<std::vector<Intervals>> piece_iv(size_, std::vector<Intervals>(F));
    for (int p = 0; p < size_; ++p) {
        auto box = box_index(p);
        for (int f = 0; f < F; ++f) piece_iv[p][f] = arc_intervals(factors_[f][box[f]]);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> tuple;
    std::vector<std::vector<Intervals>> stack;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == len) {
            out.push_back(tuple);
            return;
        }
        int start = (!ordered && depth > 0) ? tuple.back() + 1 : 0;
        for (int p = start; p < size_; ++p) {
            std::vector<Intervals> cur(F);
            bool ok = true;
            for (int f = 0; f < F && ok; ++f) {
                cur[f] = depth == 0 ? piece_iv[p][f] : intersect(stack.back()[f], piece_iv[p][f]);
                ok = !cur[f].empty();
            }
            if (!ok) continue;
            tuple.push_back(p);
            stack.push_back(std::move(cur));
            self(self, depth + 1);
            stack.pop_back();
            tuple.pop_back();
        }
    };
    if (len > 0) rec(rec, 0);
    return nerve_cache_.emplace(key, std::move(out)).first->second;
}

CoverPtr make_circle_cover(int N, double overlap) {
    if (N < 3) throw std::invalid_argument("circle cover needs N >= 3");
    if (!(overlap > 0.0 && overlap < kPi / N)) throw std::invalid_argument("circle cover overlap must lie in (0, pi/N)");
    double h = kTwoPi / N;
    std::vector<Arc> arcs;
    for (int j = 0; j < N; ++j) arcs.push_back({h * (j + 0.5), h / 2 + overlap});
    std::ostringstream id;
    id << "circle(N=" << N << ",ov=" << overlap << ")";
    return std::make_shared<Cover>(std::vector<std::vector<Arc>>{arcs}, id.str());
}

CoverPtr make_torus_cover(int N, int M, double overlap) {
    auto a = make_circle_cover(N, overlap);
    auto b = make_circle_cover(M, overlap);
    std::ostringstream id;
    id << "torus(N=" << N << ",M=" << M << ",ov=" << overlap << ")";
    return std::make_shared<Cover>(std::vector<std::vector<Arc>>{a->factor(0), b->factor(0)}, id.str());
}

CoverPtr product_cover(const CoverPtr& a, const CoverPtr& b) {
    std::vector<std::vector<Arc>> f;
    for (int i = 0; i < a->num_factors(); ++i) f.push_back(a->factor(i));
    for (int i = 0; i < b->num_factors(); ++i) f.push_back(b->factor(i));
    return std::make_shared<Cover>(f, a->id() + "x" + b->id());
}

bool is_valid_subordination(const Subordination& s) {
    if (!s.source || !s.target) return false;
    if (int(s.map.size()) != s.source->size()) return false;
    if (s.source->num_factors() != s.target->num_factors()) return false;
    for (int j = 0; j < s.source->size(); ++j) {
        int u = s.map[j];
        if (u < 0 || u >= s.target->size()) return false;
        for (int f = 0; f < s.source->num_factors(); ++f) {
            Arc v = s.source->arc(j, f);
            if (!arc_contains_interval(s.target->arc(u, f), v.center - v.half_width, v.center + v.half_width))
                return false;
        }
    }
    return true;
}

Subordination identity_subordination(const CoverPtr& c) {
    Subordination s{c, c, std::vector<int>(c->size())};
    for (int j = 0; j < c->size(); ++j) s.map[j] = j;
    return s;
}

Refinement refine(const CoverPtr& c, int factor) {
    if (factor < 2) throw std::invalid_argument("refine: factor must be >= 2");
    const int F = c->num_factors();
    std::vector<std::vector<Arc>> arcs(F);
    std::vector<std::vector<int>> sig(F), sigp(F);
    for (int f = 0; f < F; ++f) {
        UniformFactor u = uniform_factor(c->factor(f));
        double hp = u.h / factor;
        if (u.ov <= hp / 2) throw std::invalid_argument("refine: overlap too small for this refinement factor");
        double ovp = std::min(0.5 * (u.ov - hp / 2), 0.25 * hp);
        double start = u.first_center - u.h / 2;
        for (int j = 0; j < u.N * factor; ++j) {
            arcs[f].push_back({start + hp * j, hp / 2 + ovp});
            int a = j / factor;
            sig[f].push_back(a);
            sigp[f].push_back(j % factor == 0 ? (a + u.N - 1) % u.N : a);
        }
    }
    auto cover = std::make_shared<Cover>(arcs, c->id() + "/refine" + std::to_string(factor));
    Refinement r{cover, {cover, c, {}}, {cover, c, {}}};
    for (int j = 0; j < cover->size(); ++j) {
        auto box = cover->box_index(j);
        std::vector<int> b1(F), b2(F);
        for (int f = 0; f < F; ++f) {
            b1[f] = sig[f][box[f]];
            b2[f] = sigp[f][box[f]];
        }
        r.sigma.map.push_back(c->piece_index(b1));
        r.sigma_prime.map.push_back(c->piece_index(b2));
    }
    if (!is_valid_subordination(r.sigma) || !is_valid_subordination(r.sigma_prime))
        throw std::logic_error("refine: constructed subordination is not valid");
    return r;
}

DualCellDecomposition::DualCellDecomposition(int dim, std::vector<Cell> top, std::map<std::vector<int>, Cell> faces,
                                             std::string id)
    : dim_(dim), top_(std::move(top)), faces_(std::move(faces)), id_(std::move(id)) {
    for (int i = 0; i < int(top_.size()); ++i) faces_[{i}] = top_[i];
    for (int k = 1; k <= dim_ + 1; ++k) by_len_[k];
    for (const auto& [idx, cell] : faces_) {
        if (cell.dim != dim_ + 1 - int(idx.size())) throw std::logic_error("face has the wrong dimension");
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] <= idx[i + 1]) throw std::logic_error("face keys must be strictly decreasing");
        by_len_[int(idx.size())].push_back(idx);
    }
}

Cell DualCellDecomposition::face(const std::vector<int>& idx) const {
    std::vector<int> key = idx;
    int sign = sort_decreasing_sign(key);
    auto it = faces_.find(key);
    if (it == faces_.end()) throw std::out_of_range("cells do not meet in a face");
    Cell c = it->second;
    c.sign *= sign;
    return c;
}

DecompositionPtr make_circle_decomposition(int N) {
    if (N < 3) throw std::invalid_argument("circle decomposition needs N >= 3");
    double h = kTwoPi / N;
    std::vector<Cell> top;
    for (int j = 0; j < N; ++j) top.push_back(Cell{1, {{h * j, 0.0}, {h * (j + 1), 0.0}}, 1});
    std::map<std::vector<int>, Cell> faces;
    // Delta_j starts at x_j, so the shared point carries the sign -1 as a
    // boundary point of Delta_j; the wrap-around point is the end of the last cell.
    for (int j = 1; j < N; ++j) faces[{j, j - 1}] = Cell{0, {{h * j, 0.0}}, -1};
    faces[{N - 1, 0}] = Cell{0, {{h * N, 0.0}}, 1};
    return std::make_shared<DualCellDecomposition>(1, top, faces, "circle_dec(N=" + std::to_string(N) + ")");
}

DecompositionPtr make_torus_hex_decomposition(int N) {
    if (N < 3) throw std::invalid_argument("hexagonal decomposition needs N >= 3");
    const double h = kTwoPi / N;
    auto mod = [N](int a) { return ((a % N) + N) % N; };
    auto hex_id = [&](int i, int j) { return mod(i) * N + mod(j); };
    // triangle id: type 0 = lower (p, p+e1, p+e1+e2), type 1 = upper (p, p+e1+e2, p+e2)
    auto tri_id = [&](int type, int i, int j) { return (mod(i) * N + mod(j)) * 2 + type; };
    auto tri_vertices = [&](int t) {
        int type = t % 2, s = t / 2, i = s / N, j = s % N;
        if (type == 0) return std::array<int, 3>{hex_id(i, j), hex_id(i + 1, j), hex_id(i + 1, j + 1)};
        return std::array<int, 3>{hex_id(i, j), hex_id(i + 1, j + 1), hex_id(i, j + 1)};
    };
    struct Corner {
        double dx, dy;
        int type, di, dj;
    };
    const Corner corners[6] = {{2.0 / 3, 1.0 / 3, 0, 0, 0},    {1.0 / 3, 2.0 / 3, 1, 0, 0},
                               {-1.0 / 3, 1.0 / 3, 0, -1, 0},  {-2.0 / 3, -1.0 / 3, 1, -1, -1},
                               {-1.0 / 3, -2.0 / 3, 0, -1, -1}, {1.0 / 3, -1.0 / 3, 1, 0, -1}};
    const int nbr[6][2] = {{1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, 0}};

    std::vector<Cell> top(N * N);
    struct EdgeInfo {
        Cell cell;
        int tri_start, tri_end;
    };
    std::map<std::pair<int, int>, EdgeInfo> edges;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int P = hex_id(i, j);
            double cx = h * (i + 0.5), cy = h * (j + 0.5);
            Cell hex{2, {}, 1};
            int tris[6];
            for (int m = 0; m < 6; ++m) {
                hex.points.push_back({cx + h * corners[m].dx, cy + h * corners[m].dy});
                tris[m] = tri_id(corners[m].type, i + corners[m].di, j + corners[m].dj);
            }
            top[P] = hex;
            for (int m = 0; m < 6; ++m) {
                int Q = hex_id(i + nbr[m][0], j + nbr[m][1]);
                if (P < Q) continue;  // edge is owned by the larger index
                int m2 = (m + 1) % 6;
                edges[{P, Q}] = EdgeInfo{Cell{1, {hex.points[m], hex.points[m2]}, 1}, tris[m], tris[m2]};
            }
        }
    std::map<std::vector<int>, Cell> faces;
    for (const auto& [pq, e] : edges) faces[{pq.first, pq.second}] = e.cell;
    for (int t = 0; t < 2 * N * N; ++t) {
        auto v = tri_vertices(t);
        std::vector<int> key(v.begin(), v.end());
        std::sort(key.rbegin(), key.rend());
        const EdgeInfo& e = edges.at({key[0], key[1]});
        Cell pt{0, {}, 1};
        if (e.tri_end == t) {
            pt.points = {e.cell.points[1]};
            pt.sign = 1;
        } else if (e.tri_start == t) {
            pt.points = {e.cell.points[0]};
            pt.sign = -1;
        } else {
            throw std::logic_error("hexagonal decomposition: inconsistent vertex");
        }
        faces[key] = pt;
    }
    return std::make_shared<DualCellDecomposition>(2, top, faces, "torus_hex(N=" + std::to_string(N) + ")");
}

std::vector<std::vector<int>> containing_pieces(const DualCellDecomposition& dec, const Cover& cover) {
    if (cover.num_factors() != dec.dim()) throw std::invalid_argument("decomposition and cover live on different tori");
    std::vector<std::vector<int>> out(dec.num_top());
    for (int i = 0; i < dec.num_top(); ++i) {
        const Cell& c = dec.top(i);
        for (int p = 0; p < cover.size(); ++p) {
            bool ok = true;
            for (int f = 0; f < dec.dim() && ok; ++f) {
                double lo = 1e300, hi = -1e300;
                for (const auto& pt : c.points) {
                    lo = std::min(lo, pt[f]);
                    hi = std::max(hi, pt[f]);
                }
                ok = arc_contains_interval(cover.arc(p, f), lo, hi);
            }
            if (ok) out[i].push_back(p);
        }
    }
    return out;
}

std::vector<int> subordinate(const DualCellDecomposition& dec, const Cover& cover) {
    auto cand = containing_pieces(dec, cover);
    std::vector<int> rho;
    for (int i = 0; i < dec.num_top(); ++i) {
        if (cand[i].empty())
            throw std::invalid_argument("cell " + std::to_string(i) + " is not contained in any cover piece");
        rho.push_back(cand[i].front());
    }
    return rho;
}

bool is_subordinate(const DualCellDecomposition& dec, const Cover& cover, const std::vector<int>& rho) {
    if (int(rho.size()) != dec.num_top()) return false;
    auto cand = containing_pieces(dec, cover);
    for (int i = 0; i < dec.num_top(); ++i)
        if (std::find(cand[i].begin(), cand[i].end(), rho[i]) == cand[i].end()) return false;
    return true;
}

double cell_volume(const Cell& c) {
    if (c.dim == 0) return c.sign;
    if (c.dim == 1) return c.sign * (c.points[1][0] - c.points[0][0]);
    double a = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& p = c.points[i];
        const auto& q = c.points[(i + 1) % c.points.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return c.sign * 0.5 * a;
}

std::string describe(const Cover& c) {
    std::ostringstream os;
    os << "cover " << c.id() << " pieces=" << c.size() << "\n";
    for (int p = 0; p < c.size(); ++p) {
        os << "  " << p << ":";
        for (int f = 0; f < c.num_factors(); ++f) {
            Arc a = c.arc(p, f);
            os << " (" << a.center - a.half_width << ", " << a.center + a.half_width << ")";
        }
        os << "\n";
    }
    return os.str();
}

std::string describe(const DualCellDecomposition& d) {
    std::ostringstream os;
    os << "decomposition " << d.id() << " dim=" << d.dim() << "\n";
    for (int k = 1; k <= d.dim() + 1; ++k) {
        for (const auto& idx : d.faces_of_length(k)) {
            Cell c = d.face(idx);
            os << "  [";
            for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
            os << "] dim=" << c.dim << " sign=" << c.sign << " pts:";
            for (const auto& p : c.points) os << " (" << p[0] << "," << p[1] << ")";
            os << "\n";
        }
    }
    return os.str();
}

std::vector<CoverPtr> cover_components_from_id(const std::string& id) {
    static const std::regex circle(R"(circle\(N=(\d+),ov=([0-9.eE+-]+)\)((?:/refine\d+)*))");
    static const std::regex torus(R"(torus\(N=(\d+),M=(\d+),ov=([0-9.eE+-]+)\)((?:/refine\d+)*))");
    static const std::regex refine_re(R"(/refine(\d+))");
    std::vector<CoverPtr> out;
    // components are joined by 'x' in front of the next "circle(" or "torus("
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 1; i < id.size(); ++i)
        if (id[i] == 'x' && (id.compare(i + 1, 7, "circle(") == 0 || id.compare(i + 1, 6, "torus(") == 0)) {
            parts.push_back(id.substr(start, i - start));
            start = i + 1;
        }
    parts.push_back(id.substr(start));
    for (const auto& part : parts) {
        std::smatch m;
        CoverPtr c;
        std::string suffix;
        if (std::regex_match(part, m, circle)) {
            c = make_circle_cover(std::stoi(m[1]), std::stod(m[2]));
            suffix = m[3];
        } else if (std::regex_match(part, m, torus)) {
            c = make_torus_cover(std::stoi(m[1]), std::stoi(m[2]), std::stod(m[3]));
            suffix = m[4];
        } else {
            throw std::invalid_argument("unrecognised cover id: " + part);
        }
        for (auto it = std::sregex_iterator(suffix.begin(), suffix.end(), refine_re); it != std::sregex_iterator(); ++it)
            c = refine(c, std::stoi((*it)[1])).cover;
        out.push_back(c);
    }
    if (out.empty()) throw std::invalid_argument("empty cover id");
    return out;
}

CoverPtr cover_from_id(const std::string& id) {
    auto parts = cover_components_from_id(id);
    CoverPtr c = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) c = product_cover(c, parts[i]);
    if (c->id() != id) throw std::invalid_argument("cover id does not round-trip: " + id);
    return c;
}

DecompositionPtr decomposition_from_id(const std::string& id) {
    static const std::regex circle(R"(circle_dec\(N=(\d+)\))");
    static const std::regex hex(R"(torus_hex\(N=(\d+)\))");
    std::smatch m;
    if (std::regex_match(id, m, circle)) return make_circle_decomposition(std::stoi(m[1]));
    if (std::regex_match(id, m, hex)) return make_torus_hex_decomposition(std::stoi(m[1]));
    throw std::invalid_argument("unrecognised decomposition id: " + id);
}

}  // namespace gerbekit
