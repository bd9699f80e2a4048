// Level-set extraction and interface kinematics.

#include <cmath>
#include <unordered_map>

#include "pks/diagnostics.hpp"
#include "pks/errors.hpp"

namespace pks {

namespace {

double interp(const Field& f, const Grid& g, double x, double y) {
    double fi = (x - g.x0) / g.dx - 0.5;
    int i = std::clamp(static_cast<int>(std::floor(fi)), 0, g.nx - 2);
    double tx = std::clamp(fi - i, 0.0, 1.0);
    if (g.dim == 1) return (1 - tx) * f[i] + tx * f[i + 1];
    double fj = (y - g.y0) / g.dy - 0.5;
    int j = std::clamp(static_cast<int>(std::floor(fj)), 0, g.ny - 2);
    double ty = std::clamp(fj - j, 0.0, 1.0);
    return (1 - tx) * (1 - ty) * f[g.idx(i, j)] + tx * (1 - ty) * f[g.idx(i + 1, j)] +
           (1 - tx) * ty * f[g.idx(i, j + 1)] + tx * ty * f[g.idx(i + 1, j + 1)];
}

// edge pairs per marching-squares case; saddles handled separately
constexpr int kCases[16][4] = {
    {-1, -1, -1, -1}, {3, 0, -1, -1}, {0, 1, -1, -1}, {3, 1, -1, -1},
    {1, 2, -1, -1},   {-1, -1, -1, -1}, {0, 2, -1, -1}, {3, 2, -1, -1},
    {2, 3, -1, -1},   {0, 2, -1, -1}, {-1, -1, -1, -1}, {1, 2, -1, -1},
    {1, 3, -1, -1},   {0, 1, -1, -1}, {3, 0, -1, -1},  {-1, -1, -1, -1}};

} // namespace

std::vector<std::vector<Point2>> extract_contours(const Field& phi, const Grid& g, double level,
                                                  std::vector<bool>* closed) {
    std::vector<std::vector<Point2>> out;
    if (closed) closed->clear();
    if (g.dim == 1) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            double a = phi[i] - level, b = phi[i + 1] - level;
            if ((a > 0) != (b > 0)) {
                double t = a / (a - b);
                out.push_back({{g.xc(i) + t * g.dx, 0.0}});
                if (closed) closed->push_back(false);
            }
        }
        return out;
    }

    const int nx = g.nx, ny = g.ny;
    auto hid = [&](int i, int j) { return 2L * (static_cast<long>(j) * nx + i); };
    auto vid = [&](int i, int j) { return 2L * (static_cast<long>(j) * nx + i) + 1; };
    std::unordered_map<long, Point2> where;
    auto edge_point = [&](long id) -> long {
        if (where.count(id)) return id;
        long base = id / 2;
        int i = static_cast<int>(base % nx), j = static_cast<int>(base / nx);
        int i2 = i, j2 = j;
        if (id % 2 == 0) i2 = i + 1; else j2 = j + 1;
        double a = phi[g.idx(i, j)] - level, b = phi[g.idx(i2, j2)] - level;
        double t = (a == b) ? 0.5 : a / (a - b);
        where[id] = {g.xc(i) + t * (g.xc(i2) - g.xc(i)), g.yc(j) + t * (g.yc(j2) - g.yc(j))};
        return id;
    };

    std::vector<std::pair<long, long>> segs;
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            double v0 = phi[g.idx(i, j)], v1 = phi[g.idx(i + 1, j)];
            double v2 = phi[g.idx(i + 1, j + 1)], v3 = phi[g.idx(i, j + 1)];
            int c = (v0 > level) | (v1 > level) << 1 | (v2 > level) << 2 | (v3 > level) << 3;
            if (c == 0 || c == 15) continue;
            long e[4] = {hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
            auto add = [&](int a, int b) { segs.emplace_back(edge_point(e[a]), edge_point(e[b])); };
            if (c == 5 || c == 10) {
                bool centre_high = 0.25 * (v0 + v1 + v2 + v3) > level;
                // true: isolate corners 1 and 3, false: isolate corners 0 and 2
                bool iso13 = (c == 5) == centre_high;
                if (iso13) { add(0, 1); add(2, 3); } else { add(3, 0); add(1, 2); }
                continue;
            }
            add(kCases[c][0], kCases[c][1]);
        }

    // link segments sharing an edge point
    std::unordered_map<long, std::vector<int>> at;
    for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
        at[segs[s].first].push_back(s);
        at[segs[s].second].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    auto walk = [&](int s0, long start) {
        std::vector<Point2> line{where[start]};
        long cur = start;
        int s = s0;
        bool loop = false;
        while (s >= 0 && !used[s]) {
            used[s] = true;
            long nxt = segs[s].first == cur ? segs[s].second : segs[s].first;
            if (nxt == start) {
                loop = true;
                break;
            }
            line.push_back(where[nxt]);
            cur = nxt;
            s = -1;
            for (int t : at[cur])
                if (!used[t]) s = t;
        }
        out.push_back(std::move(line));
        if (closed) closed->push_back(loop);
    };
    for (auto& [id, list] : at)
        if (list.size() == 1 && !used[list[0]]) walk(list[0], id);
    for (int s = 0; s < static_cast<int>(segs.size()); ++s)
        if (!used[s]) walk(s, segs[s].first);
    return out;
}

InterfaceGeometry interface_geometry(const SimState& prev, const SimState& cur, const Medium& md,
                                     const Potentials& pot) {
    const Grid& g = md.grid;
    const double level = 0.5 * pot.k().phi_plus;
    InterfaceGeometry geo;
    geo.contours = extract_contours(cur.phi, g, level, &geo.closed);
    if (geo.contours.empty()) throw EmptyInterface("no crossing of the mid level");
    geo.perimeter_mm = mm_perimeter(cur, md, pot);

    const size_t n = g.size();
    Field psi0(n), psi1(n), sx, sy, gn(n);
    for (size_t k = 0; k < n; ++k) {
        psi0[k] = pot.F(prev.phi[k]);
        psi1[k] = pot.F(cur.phi[k]);
    }
    gradient(psi1, g, sx, sy);
    for (size_t k = 0; k < n; ++k) gn[k] = std::hypot(sx[k], sy[k]);
    const double dt = cur.t - prev.t;
    Field dpsi(n);
    for (size_t k = 0; k < n; ++k) dpsi[k] = dt > 0 ? (psi1[k] - psi0[k]) / dt : 0.0;

    for (size_t c = 0; c < geo.contours.size(); ++c) {
        const auto& line = geo.contours[c];
        const size_t m = line.size();
        for (size_t i = 0; i < m; ++i) {
            const Point2& q = line[i];
            geo.sample_points.push_back(q);
            double gnorm = interp(gn, g, q.x, q.y);
            geo.normal_velocity.push_back(gnorm > 0 ? interp(dpsi, g, q.x, q.y) / gnorm : 0.0);
            double kap = 0;
            if (g.dim == 2 && m >= 5) {
                // circle through points a few vertices apart
                size_t s = 2;
                const Point2& a = line[(i + m - s) % m];
                const Point2& b = line[(i + s) % m];
                bool ok = geo.closed[c] || (i >= s && i + s < m);
                if (ok) {
                    double ax = a.x - q.x, ay = a.y - q.y, bx = b.x - q.x, by = b.y - q.y;
                    double cr = ax * by - ay * bx;
                    double la = std::hypot(ax, ay), lb = std::hypot(bx, by), lab = std::hypot(a.x - b.x, a.y - b.y);
                    if (la * lb * lab > 0) kap = 2 * cr / (la * lb * lab);
                }
            }
            geo.curvature.push_back(std::abs(kap));
        }
        if (g.dim == 1) {
            geo.perimeter_geom += std::sqrt(md.a11[std::clamp<int>((line[0].x - g.x0) / g.dx, 0, g.nx - 1)]);
        } else {
            size_t segs = geo.closed[c] ? m : m - 1;
            for (size_t i = 0; i < segs; ++i) {
                const Point2& a = line[i];
                const Point2& b = line[(i + 1) % m];
                double tx = b.x - a.x, ty = b.y - a.y, len = std::hypot(tx, ty);
                if (len == 0) continue;
                double nxv = ty / len, nyv = -tx / len;
                geo.perimeter_geom += len * md.norm_at(0.5 * (a.x + b.x), 0.5 * (a.y + b.y), nxv, nyv);
            }
        }
    }
    return geo;
}

} // namespace pks
