import type { PanelTab, StoryboardNode, ViewerState } from "./types";
import { PANEL_TABS } from "./types";
import { parseStoryboard } from "./validate";
import { createState, clearSelection, selectNode, setTab } from "./state";
import { CARD, borderPoint, computePositions } from "./layout";

const SVG_NS = "http://www.w3.org/2000/svg";

const TAB_LABELS: Record<PanelTab, string> = {
  page: "Page",
  layout: "Layout",
  code: "Code",
  methods: "Methods",
};

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

/** The storyboard explorer: a pannable/zoomable transition graph on the
 *  left, four detail panels for the selected activity on the right.
 *
 *  The app never mutates the loaded document; every interaction produces a
 *  new ViewerState and re-renders from it. */
export class ViewerApp {
  private readonly root: HTMLElement;
  private state: ViewerState | null = null;
  private view = { scale: 1, tx: 0, ty: 0 };
  private viewport: SVGGElement | null = null;

  constructor(root: HTMLElement) {
    this.root = root;
    this.root.classList.add("sb-app");
  }

  getState(): ViewerState | null {
    return this.state;
  }

  /** Parse, validate, and render a storyboard. On any parse or schema
   *  problem the previous content is cleared and only the error banner is
   *  shown: no partial render. */
  load(data: unknown): void {
    try {
      const document_ = parseStoryboard(data);
      this.state = createState(document_);
      this.view = { scale: 1, tx: 0, ty: 0 };
      this.render();
    } catch (exc) {
      this.state = null;
      this.showError((exc as Error).message);
    }
  }

  showError(message: string): void {
    this.root.textContent = "";
    const banner = el("div", "sb-error", message);
    banner.setAttribute("role", "alert");
    this.root.appendChild(banner);
  }

  select(classname: string): void {
    if (!this.state) {
      return;
    }
    this.state = selectNode(this.state, classname);
    this.render();
  }

  clear(): void {
    if (!this.state) {
      return;
    }
    this.state = clearSelection(this.state);
    this.render();
  }

  switchTab(tab: PanelTab): void {
    if (!this.state) {
      return;
    }
    this.state = setTab(this.state, tab);
    this.render();
  }

  private render(): void {
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

  private renderGraph(): HTMLElement {
    const doc = this.state!.document;
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
      const from = positions.get(source)!;
      const to = positions.get(target)!;
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
      viewport.appendChild(this.renderCard(node, positions.get(node.class_name)!));
    }
    svg.appendChild(viewport);
    host.appendChild(svg);
    this.wireInteraction(svg);
    return host;
  }

  private renderCard(node: StoryboardNode, at: { x: number; y: number }): SVGGElement {
    const selected = this.state!.selected === node.class_name;
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

    // hosted fragments ride along as secondary thumbnails on the card
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

  private wireInteraction(svg: SVGSVGElement): void {
    svg.addEventListener("click", (event) => {
      const target = event.target as Element | null;
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
      // zoom around the cursor: keep the graph point under it fixed
      const px = (event.offsetX - this.view.tx) / this.view.scale;
      const py = (event.offsetY - this.view.ty) / this.view.scale;
      this.view.scale = next;
      this.view.tx = event.offsetX - px * next;
      this.view.ty = event.offsetY - py * next;
      this.applyViewTransform();
    });

    let dragging: { x: number; y: number } | null = null;
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

  private applyViewTransform(): void {
    this.viewport?.setAttribute(
      "transform",
      `translate(${this.view.tx},${this.view.ty}) scale(${this.view.scale})`,
    );
  }

  private renderPanel(): HTMLElement {
    const state = this.state!;
    const panel = el("aside", "sb-panel");
    const node = state.document.nodes.find((n) => n.class_name === state.selected);
    if (!node) {
      panel.appendChild(
        el("div", "sb-panel-hint", "Select an activity card to inspect it."),
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

  private renderTab(node: StoryboardNode, tab: PanelTab): HTMLElement {
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
        // verbatim text; placeholder only when upstream produced nothing
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
          list.appendChild(el("li", "sb-method-row", `${caller} → ${callee}`));
        }
        return list;
      }
    }
  }
}

export function mountViewer(root: HTMLElement, data?: unknown): ViewerApp {
  const app = new ViewerApp(root);
  if (data !== undefined) {
    app.load(data);
  }
  return app;
}
