// End-to-end checks against the real service. The Python package must be
// installed (pip install -e ..); the service is spawned on a random port
// over a throwaway directory tree.

import { ChildProcess, spawn } from 'node:child_process';
import { mkdtempSync, writeFileSync, mkdirSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { enhanceAnnotationForm } from '../src/annotate.js';
import { annotationRows, FetchLike } from '../src/contract.js';
import { bookmarkClick } from '../src/bookmark.js';

let proc: ChildProcess;
let base: string;

function relativeFetch(): FetchLike {
  return (input, init) => fetch(new URL(input, base).toString(), init);
}

async function pageDocument(path: string): Promise<Document> {
  const resp = await fetch(base + path);
  expect(resp.status).toBe(200);
  return new DOMParser().parseFromString(await resp.text(), 'text/html');
}

const flush = () => new Promise((resolve) => setTimeout(resolve, 50));

beforeAll(async () => {
  const root = mkdtempSync(join(tmpdir(), 'dl-tree-'));
  const state = mkdtempSync(join(tmpdir(), 'dl-state-'));
  writeFileSync(join(root, 'c.txt'), 'line one\nline two\nline three\n');
  mkdirSync(join(state, 'uploads'));
  const port = 20000 + Math.floor(Math.random() * 40000);
  base = `http://127.0.0.1:${port}`;
  proc = spawn('python3', [
    '-m', 'deeplinker.cli',
    '--root', root,
    '--port', String(port),
    '--journal', join(state, 'annotations.nt'),
    '--upload-dir', join(state, 'uploads'),
    '--cache-dir', join(state, 'cache'),
  ], { stdio: 'ignore' });
  for (let i = 0; i < 100; i += 1) {
    try {
      const resp = await fetch(base + '/');
      if (resp.status === 200) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error('service did not start');
});

afterAll(() => {
  proc?.kill();
});

describe('against the running service', () => {
  it('annotation form round trip appends a row without reload', async () => {
    const doc = await pageDocument('/filesystem/c.txt');
    const before = annotationRows(doc).length;
    enhanceAnnotationForm(doc, relativeFetch());
    const form = doc.getElementById('annotation-form') as HTMLFormElement;
    (form.querySelector('[name="predicate"]') as HTMLInputElement).value =
      'http://www.w3.org/2000/01/rdf-schema#comment';
    (form.querySelector('[name="object"]') as HTMLInputElement).value = 'Artificial';
    form.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    await flush();
    expect(annotationRows(doc).length).toBe(before + 1);
    // and the server actually stored it
    const again = await pageDocument('/filesystem/c.txt');
    expect(annotationRows(again).map((r) => r.object)).toContain('Artificial');
  });

  it('bookmark click makes the link appear on /bookmarks', async () => {
    const doc = await pageDocument('/filesystem/c.txt');
    bookmarkClick(doc, relativeFetch());
    const button = doc.getElementById('bookmark')!;
    button.closest('form')!.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    await flush();
    expect(button.dataset.bookmarked).toBe('true');
    const listing = await (await fetch(base + '/bookmarks')).text();
    expect(listing).toContain('href="/filesystem/c.txt"');
  });

  it('plain form POST still works with scripting disabled', async () => {
    const body = new URLSearchParams({
      subject: '/filesystem/c.txt',
      predicate: 'http://www.w3.org/2000/01/rdf-schema#label',
      object: 'no-script path',
      type: 'literal',
    });
    const resp = await fetch(base + '/annotations', {
      method: 'POST',
      headers: { 'Content-Type': 'application/x-www-form-urlencoded' },
      body: body.toString(),
      redirect: 'follow',
    });
    expect(resp.status).toBe(200); // 303 followed back to the page
    expect(await resp.text()).toContain('no-script path');
  });

  it('search endpoint finds the stored literal', async () => {
    const resp = await fetch(base + '/search?q=artificial');
    const doc = (await resp.json()) as { results: Array<{ path?: string }> };
    expect(doc.results.some((row) => row.path === '/filesystem/c.txt')).toBe(true);
  });
});
