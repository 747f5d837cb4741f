"use strict";
(() => {
  // src/types.ts
  var PANEL_TABS = ["page", "layout", "code", "methods"];

  // src/validate.ts
  var PAGE_PATTERN = /^pages\/.+\.svg$/;
  function isRecord(value) {
    return typeof value === "object" && value !== null && !Array.isArray(value);
  }
  function isStringPair(value) {
    return Array.isArray(value) && value.length === 2 && value.every((item) => typeof item === "string");
  }
  function validateStoryboard(value) {
    const errors = [];
    if (!isRecord(value)) {
      return ["document is not a JSON object"];
    }
    if (typeof value.app_id !== "string" || value.app_id.length === 0) {
      errors.push("app_id must be a non-empty string");
    }
    const names = /* @__PURE__ */ new Set();
    if (!Array.isArray(value.nodes)) {
      errors.push("nodes must be an array");
    } else {
      value.nodes.forEach((node, i) => {
        if (!isRecord(node)) {
          errors.push(`nodes[${i}] is not an object`);
          return;
        }
        for (const field of ["class_name", "display_name", "page", "layout_code", "activity_code"]) {
          if (typeof node[field] !== "string") {
            errors.push(`nodes[${i}].${field} must be a string`);
          }
        }
        if (typeof node.page === "string" && !PAGE_PATTERN.test(node.page)) {
          errors.push(`nodes[${i}].page must look like pages/<name>.svg`);
        }
        if (!Array.isArray(node.method_hierarchy) || !node.method_hierarchy.every(isStringPair)) {
          errors.push(`nodes[${i}].method_hierarchy must be an array of [caller, callee] pairs`);
        }
        if (node.fragment_pages !== void 0) {
          const ok = Array.isArray(node.fragment_pages) && node.fragment_pages.every(
            (f) => isRecord(f) && typeof f.name === "string" && typeof f.page === "string" && PAGE_PATTERN.test(f.page)
          );
          if (!ok) {
            errors.push(`nodes[${i}].fragment_pages must be {name, page} objects`);
          }
        }
        if (typeof node.class_name === "string") {
          names.add(node.class_name);
        }
      });
    }
    if (!Array.isArray(value.edges) || !value.edges.every(isStringPair)) {
      errors.push("edges must be an array of [source, target] pairs");
    } else if (errors.length === 0) {
      value.edges.forEach(([source, target], i) => {
        if (!names.has(source) || !names.has(target)) {
          errors.push(`edges[${i}] references an unknown activity (${source} -> ${target})`);
        }
      });
    }
    if (value.warnings !== void 0) {
      const ok = Array.isArray(value.warnings) && value.warnings.every((w) => typeof w === "string");
      if (!ok) {
        errors.push("warnings must be an array of strings");
      }
    }
    return errors;
  }
  function parseStoryboard(data) {
    let value = data;
    if (typeof data === "string") {
      try {
        value = JSON.parse(data);
      } catch (exc) {
        throw new Error(`storyboard is not valid JSON: ${exc.message}`);
      }
    }
    const errors = validateStoryboard(value);
    if (errors.length > 0) {
      throw new Error(`storyboard document invalid: ${errors[0]}`);
    }
    return value;
  }

  // src/state.ts
  function createState(document2) {
    return { document: document2, selected: null, tab: "page" };
  }
  function selectNode(state, classname) {
    if (!state.document.nodes.some((n) => n.class_name === classname)) {
      return state;
    }
    return { ...state, selected: classname };
  }
  function clearSelection(state) {
    return { ...state, selected: null };
  }
  function setTab(state, tab) {
    if (!PANEL_TABS.includes(tab)) {
      return state;
    }
    return { ...state, tab };
  }

  // src/layout.ts
  var CARD = {
    width: 124,
    height: 248,
    hGap: 90,
    vGap: 30,
    padding: 40
  };
  function computePositions(nodeIds, edges, card = CARD) {
    const outgoing = /* @__PURE__ */ new Map();
    for (const id of nodeIds) {
      outgoing.set(id, []);
    }
    for (const [source, target] of edges) {
      if (outgoing.has(source) && outgoing.has(target) && source !== target) {
        outgoing.get(source).push(target);
      }
    }
    const layerOf = /* @__PURE__ */ new Map();
    for (const root of nodeIds) {
      if (layerOf.has(root)) {
        continue;
      }
      layerOf.set(root, 0);
      const queue = [root];
      while (queue.length > 0) {
        const current = queue.shift();
        const depth = layerOf.get(current);
        for (const next of outgoing.get(current)) {
          if (!layerOf.has(next)) {
            layerOf.set(next, depth + 1);
            queue.push(next);
          }
        }
      }
    }
    const layers = /* @__PURE__ */ new Map();
    for (const id of nodeIds) {
      const layer = layerOf.get(id);
      if (!layers.has(layer)) {
        layers.set(layer, []);
      }
      layers.get(layer).push(id);
    }
    const positions = /* @__PURE__ */ new Map();
    for (const [layer, members] of layers) {
      members.forEach((id, row) => {
        positions.set(id, {
          x: card.padding + layer * (card.width + card.hGap),
          y: card.padding + row * (card.height + card.vGap)
        });
      });
    }
    return positions;
  }
  function borderPoint(cx, cy, towardX, towardY, card = CARD) {
    const dx = towardX - cx;
    const dy = towardY - cy;
    if (dx === 0 && dy === 0) {
      return { x: cx, y: cy };
    }
    const halfW = card.width / 2;
    const halfH = card.height / 2;
    const tx = dx === 0 ? Infinity : halfW / Math.abs(dx);
    const ty = dy === 0 ? Infinity : halfH / Math.abs(dy);
    const t = Math.min(tx, ty);
    return { x: cx + dx * t, y: cy + dy * t };
  }

  // src/dom.ts
  var SVG_NS = "http://www.w3.org/2000/svg";
  var TAB_LABELS = {
    page: "Page",
    layout: "Layout",
    code: "Code",
    methods: "Methods"
  };
  function svgEl(tag) {
    return document.createElementNS(SVG_NS, tag);
  }
  function el(tag, className, text) {
    const node = document.createElement(tag);
    if (className) {
      node.className = className;
    }
    if (text !== void 0) {
      node.textContent = text;
    }
    return node;
  }
  var ViewerApp = class {
    constructor(root) {
      this.state = null;
      this.view = { scale: 1, tx: 0, ty: 0 };
      this.viewport = null;
      this.root = root;
      this.root.classList.add("sb-app");
    }
    getState() {
      return this.state;
    }
    /** Parse, validate, and render a storyboard. On any parse or schema
     *  problem the previous content is cleared and only the error banner is
     *  shown: no partial render. */
    load(data) {
      try {
        const document_ = parseStoryboard(data);
        this.state = createState(document_);
        this.view = { scale: 1, tx: 0, ty: 0 };
        this.render();
      } catch (exc) {
        this.state = null;
        this.showError(exc.message);
      }
    }
    showError(message) {
      this.root.textContent = "";
      const banner = el("div", "sb-error", message);
      banner.setAttribute("role", "alert");
      this.root.appendChild(banner);
    }
    select(classname) {
      if (!this.state) {
        return;
      }
      this.state = selectNode(this.state, classname);
      this.render();
    }
    clear() {
      if (!this.state) {
        return;
      }
      this.state = clearSelection(this.state);
      this.render();
    }
    switchTab(tab) {
      if (!this.state) {
        return;
      }
      this.state = setTab(this.state, tab);
      this.render();
    }
    render() {
      if (!this.state) {
        return;
      }
      this.root.textContent = "";
      const doc = this.state.document;
      const header = el("header", "sb-header");
      header.appendChild(el("span", "sb-app-id", doc.app_id));
      const warnings = doc.warnings ?? [];
      if (warnings.length > 0) {
        const badge = el("span", "sb-warnings", `${warnings.length} warnings`);
        badge.title = warnings.join("\n");
        header.appendChild(badge);
      }
      this.root.appendChild(header);
      if (doc.nodes.length === 0) {
        this.root.appendChild(el("div", "sb-empty", "no activities"));
        return;
      }
      const body = el("div", "sb-body");
      body.appendChild(this.renderGraph());
      body.appendChild(this.renderPanel());
      this.root.appendChild(body);
    }
    renderGraph() {
      const doc = this.state.document;
      const host = el("div", "sb-graph");
      const svg = svgEl("svg");
      svg.classList.add("sb-canvas");
      const defs = svgEl("defs");
      const marker = svgEl("marker");
      marker.setAttribute("id", "sb-arrow");
      marker.setAttribute("viewBox", "0 0 10 10");
      marker.setAttribute("refX", "9");
      marker.setAttribute("refY", "5");
      marker.setAttribute("markerWidth", "7");
      marker.setAttribute("markerHeight", "7");
      marker.setAttribute("orient", "auto-start-reverse");
      const tip = svgEl("path");
      tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
      marker.appendChild(tip);
      defs.appendChild(marker);
      svg.appendChild(defs);
      const viewport = svgEl("g");
      viewport.classList.add("sb-viewport");
      this.viewport = viewport;
      this.applyViewTransform();
      const ids = doc.nodes.map((n) => n.class_name);
      const positions = computePositions(ids, doc.edges);
      for (const [source, target] of doc.edges) {
        if (source === target) {
          continue;
        }
        const from = positions.get(source);
        const to = positions.get(target);
        const fromCenter = { x: from.x + CARD.width / 2, y: from.y + CARD.height / 2 };
        const toCenter = { x: to.x + CARD.width / 2, y: to.y + CARD.height / 2 };
        const p1 = borderPoint(fromCenter.x, fromCenter.y, toCenter.x, toCenter.y);
        const p2 = borderPoint(toCenter.x, toCenter.y, fromCenter.x, fromCenter.y);
        const line = svgEl("line");
        line.classList.add("sb-edge");
        line.setAttribute("x1", String(p1.x));
        line.setAttribute("y1", String(p1.y));
        line.setAttribute("x2", String(p2.x));
        line.setAttribute("y2", String(p2.y));
        line.setAttribute("marker-end", "url(#sb-arrow)");
        viewport.appendChild(line);
      }
      for (const node of doc.nodes) {
        viewport.appendChild(this.renderCard(node, positions.get(node.class_name)));
      }
      svg.appendChild(viewport);
      host.appendChild(svg);
      this.wireInteraction(svg);
      return host;
    }
    renderCard(node, at) {
      const selected = this.state.selected === node.class_name;
      const group = svgEl("g");
      group.classList.add("sb-node");
      if (selected) {
        group.classList.add("sb-selected");
      }
      group.setAttribute("data-node", node.class_name);
      group.setAttribute("transform", `translate(${at.x},${at.y})`);
      const card = svgEl("rect");
      card.classList.add("sb-card");
      card.setAttribute("width", String(CARD.width));
      card.setAttribute("height", String(CARD.height));
      card.setAttribute("rx", "6");
      group.appendChild(card);
      const thumb = svgEl("image");
      thumb.classList.add("sb-thumb");
      thumb.setAttribute("href", node.page);
      thumb.setAttribute("x", "7");
      thumb.setAttribute("y", "7");
      thumb.setAttribute("width", String(CARD.width - 14));
      thumb.setAttribute("height", String(CARD.height - 40));
      group.appendChild(thumb);
      (node.fragment_pages ?? []).forEach((fragment, i) => {
        const mini = svgEl("image");
        mini.classList.add("sb-fragment-thumb");
        mini.setAttribute("href", fragment.page);
        mini.setAttribute("x", String(CARD.width - 7 - 34 - i * 38));
        mini.setAttribute("y", String(CARD.height - 40 - 62));
        mini.setAttribute("width", "34");
        mini.setAttribute("height", "60");
        const miniTitle = svgEl("title");
        miniTitle.textContent = fragment.name;
        mini.appendChild(miniTitle);
        group.appendChild(mini);
      });
      const label = svgEl("text");
      label.classList.add("sb-label");
      label.setAttribute("x", String(CARD.width / 2));
      label.setAttribute("y", String(CARD.height - 14));
      label.setAttribute("text-anchor", "middle");
      label.textContent = node.display_name;
      const title = svgEl("title");
      title.textContent = node.class_name;
      group.appendChild(label);
      group.appendChild(title);
      return group;
    }
    wireInteraction(svg) {
      svg.addEventListener("click", (event) => {
        const target = event.target;
        const card = target?.closest?.("[data-node]");
        const classname = card?.getAttribute("data-node");
        if (classname) {
          this.select(classname);
        } else {
          this.clear();
        }
      });
      svg.addEventListener("wheel", (event) => {
        event.preventDefault();
        const factor = Math.exp(-event.deltaY / 400);
        const next = Math.min(4, Math.max(0.2, this.view.scale * factor));
        const px = (event.offsetX - this.view.tx) / this.view.scale;
        const py = (event.offsetY - this.view.ty) / this.view.scale;
        this.view.scale = next;
        this.view.tx = event.offsetX - px * next;
        this.view.ty = event.offsetY - py * next;
        this.applyViewTransform();
      });
      let dragging = null;
      svg.addEventListener("mousedown", (event) => {
        dragging = { x: event.clientX - this.view.tx, y: event.clientY - this.view.ty };
      });
      svg.addEventListener("mousemove", (event) => {
        if (!dragging) {
          return;
        }
        this.view.tx = event.clientX - dragging.x;
        this.view.ty = event.clientY - dragging.y;
        this.applyViewTransform();
      });
      const stop = () => {
        dragging = null;
      };
      svg.addEventListener("mouseup", stop);
      svg.addEventListener("mouseleave", stop);
    }
    applyViewTransform() {
      this.viewport?.setAttribute(
        "transform",
        `translate(${this.view.tx},${this.view.ty}) scale(${this.view.scale})`
      );
    }
    renderPanel() {
      const state = this.state;
      const panel = el("aside", "sb-panel");
      const node = state.document.nodes.find((n) => n.class_name === state.selected);
      if (!node) {
        panel.appendChild(
          el("div", "sb-panel-hint", "Select an activity card to inspect it.")
        );
        return panel;
      }
      panel.appendChild(el("h2", "sb-panel-title", node.display_name));
      if (node.display_name !== node.class_name) {
        panel.appendChild(el("div", "sb-panel-subtitle", node.class_name));
      }
      const tabs = el("nav", "sb-tabs");
      for (const tab of PANEL_TABS) {
        const button = el("button", "sb-tab", TAB_LABELS[tab]);
        button.setAttribute("data-tab", tab);
        button.setAttribute("aria-selected", String(tab === state.tab));
        button.addEventListener("click", () => this.switchTab(tab));
        tabs.appendChild(button);
      }
      panel.appendChild(tabs);
      const content = el("div", "sb-panel-content");
      content.setAttribute("data-tab", state.tab);
      content.appendChild(this.renderTab(node, state.tab));
      panel.appendChild(content);
      return panel;
    }
    renderTab(node, tab) {
      switch (tab) {
        case "page": {
          const box = el("div", "sb-tab-page");
          const img = el("img", "sb-page-img");
          img.src = node.page;
          img.alt = `rendered page of ${node.display_name}`;
          box.appendChild(img);
          for (const fragment of node.fragment_pages ?? []) {
            box.appendChild(el("h3", "sb-fragment-name", fragment.name));
            const fimg = el("img", "sb-fragment-img");
            fimg.src = fragment.page;
            fimg.alt = `rendered page of fragment ${fragment.name}`;
            box.appendChild(fimg);
          }
          return box;
        }
        case "layout": {
          const text = node.layout_code !== "" ? node.layout_code : "(no layout synthesized)";
          return el("pre", "sb-layout-code", text);
        }
        case "code": {
          const text = node.activity_code !== "" ? node.activity_code : "(no code available)";
          return el("pre", "sb-activity-code", text);
        }
        case "methods": {
          if (node.method_hierarchy.length === 0) {
            return el("div", "sb-methods-empty", "(no intra-class calls)");
          }
          const list = el("ul", "sb-methods");
          for (const [caller, callee] of node.method_hierarchy) {
            list.appendChild(el("li", "sb-method-row", `${caller} \u2192 ${callee}`));
          }
          return list;
        }
      }
    }
  };
  function mountViewer(root, data) {
    const app = new ViewerApp(root);
    if (data !== void 0) {
      app.load(data);
    }
    return app;
  }

  // src/main.ts
  function boot() {
    const root = document.getElementById("storyboard-root");
    if (!root) {
      return;
    }
    const app = mountViewer(root);
    if (window.__STORYBOARD__ !== void 0) {
      app.load(window.__STORYBOARD__);
      return;
    }
    fetch("storyboard.json").then((response) => {
      if (!response.ok) {
        throw new Error(`HTTP ${response.status}`);
      }
      return response.text();
    }).then((text) => app.load(text)).catch((exc) => app.showError(`could not load storyboard.json: ${exc.message}`));
  }
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", boot);
  } else {
    boot();
  }
})();
