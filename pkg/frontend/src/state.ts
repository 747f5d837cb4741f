import type { PanelTab, StoryboardDocument, ViewerState } from "./types";
import { PANEL_TABS } from "./types";

export function createState(document: StoryboardDocument): ViewerState {
  return { document, selected: null, tab: "page" };
}

export function selectNode(state: ViewerState, classname: string): ViewerState {
  if (!state.document.nodes.some((n) => n.class_name === classname)) {
    return state;
  }
  return { ...state, selected: classname };
}

export function clearSelection(state: ViewerState): ViewerState {
  return { ...state, selected: null };
}

export function setTab(state: ViewerState, tab: PanelTab): ViewerState {
  if (!PANEL_TABS.includes(tab)) {
    return state;
  }
  return { ...state, tab };
}
