/** Minimal node-tree realizer for render.ts output. */

import type { VNode } from './render';

export function toElement(doc: Document, node: VNode | string): Node {
  if (typeof node === 'string') {
    return doc.createTextNode(node);
  }
  const el = doc.createElement(node.tag);
  for (const [key, value] of Object.entries(node.attrs)) {
    el.setAttribute(key, value);
  }
  for (const child of node.children) {
    el.appendChild(toElement(doc, child));
  }
  return el;
}

export function mount(doc: Document, container: Element, tree: VNode): void {
  container.replaceChildren(toElement(doc, tree));
}
